//! Free-group words on numbered generators, exponent-sum functionals and
//! the Magnus expansion into integer power series truncated at a fixed
//! degree. Words are kept unreduced; every functional here is insensitive
//! to free reduction, so reduction is only applied for display and normal
//! forms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordsError {
    #[error("pair count needs two distinct generators, got g{0} twice")]
    EqualPairGenerators(usize),
    #[error("degree bounds differ: {left} vs {right}")]
    DegreeBoundMismatch { left: usize, right: usize },
    #[error("monomial of length {len} exceeds degree bound {bound}")]
    MonomialTooLong { len: usize, bound: usize },
    #[error("cannot parse word token `{0}`")]
    BadToken(String),
}

/// Exponent of a single letter, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(n: i64) -> Sign {
        if n < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// One signed generator occurrence. Generators are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(generator: usize, sign: Sign) -> Letter {
        assert!(generator >= 1, "generators are numbered from 1");
        Letter { generator, sign }
    }

    pub fn positive(generator: usize) -> Letter {
        Letter::new(generator, Sign::Plus)
    }

    pub fn negative(generator: usize) -> Letter {
        Letter::new(generator, Sign::Minus)
    }

    pub fn inverse(self) -> Letter {
        Letter {
            sign: self.sign.flip(),
            ..self
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "g{}", self.generator),
            Sign::Minus => write!(f, "g{}^-1", self.generator),
        }
    }
}

/// A finite, possibly unreduced word in the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn prepend(&mut self, letter: Letter) {
        self.0.insert(0, letter);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    /// Formal inverse: letters reversed with flipped signs.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `n`-th power for any integer `n` (negative powers via the inverse).
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out.extend(&base);
        }
        out
    }

    /// The unique freely reduced word equal to this one: no adjacent
    /// letter sits next to its own inverse.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word(stack)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordsError;

    /// Parses the whitespace-separated `g<k>` / `g<k>^-1` syntax; the
    /// bare token `1` (or an empty string) is the empty word.
    fn from_str(s: &str) -> Result<Word, WordsError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let bad = || WordsError::BadToken(tok.to_string());
            let rest = tok.strip_prefix('g').ok_or_else(bad)?;
            let (digits, sign) = match rest.strip_suffix("^-1") {
                Some(d) => (d, Sign::Minus),
                None => (rest, Sign::Plus),
            };
            let generator: usize = digits.parse().map_err(|_| bad())?;
            if generator == 0 {
                return Err(bad());
            }
            letters.push(Letter::new(generator, sign));
        }
        Ok(Word(letters))
    }
}

/// Sum of the exponents of generator `gen` in `w`.
pub fn exponent_sum(gen: usize, w: &Word) -> i64 {
    w.letters()
        .iter()
        .filter(|l| l.generator == gen)
        .map(|l| l.sign.value())
        .sum()
}

/// Signed count of ordered occurrences of `first` before `second` in `w`:
/// every pair of a `first`-letter with exponent `r` and a later
/// `second`-letter with exponent `s` contributes `r*s`. Letters of other
/// generators are ignored.
pub fn pair_exponent_sum(first: usize, second: usize, w: &Word) -> Result<i64, WordsError> {
    if first == second {
        return Err(WordsError::EqualPairGenerators(first));
    }
    let mut seen_first = 0i64;
    let mut total = 0i64;
    for l in w.letters() {
        if l.generator == second {
            total += seen_first * l.sign.value();
        }
        if l.generator == first {
            seen_first += l.sign.value();
        }
    }
    Ok(total)
}

/// An integer polynomial in noncommuting variables `h1, h2, ...`,
/// truncated at a fixed total degree. Monomials are stored sparsely as
/// index sequences; zero coefficients are never kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    bound: usize,
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(bound: usize) -> TruncatedSeries {
        TruncatedSeries {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bound: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(bound);
        s.terms.insert(Vec::new(), BigInt::one());
        s
    }

    pub fn from_terms<I, C>(bound: usize, terms: I) -> TruncatedSeries
    where
        I: IntoIterator<Item = (Vec<usize>, C)>,
        C: Into<BigInt>,
    {
        let mut s = TruncatedSeries::zero(bound);
        for (mono, coeff) in terms {
            assert!(mono.len() <= bound, "monomial exceeds degree bound");
            s.add_term(mono, coeff.into());
        }
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    pub fn coeff(&self, mono: &[usize]) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    fn add_term(&mut self, mono: Vec<usize>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Noncommutative product, discarding every monomial of degree above
    /// the common bound.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, WordsError> {
        if self.bound != other.bound {
            return Err(WordsError::DegreeBoundMismatch {
                left: self.bound,
                right: other.bound,
            });
        }
        let mut out = TruncatedSeries::zero(self.bound);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.len() + m2.len() > self.bound {
                    continue;
                }
                let mut mono = m1.clone();
                mono.extend_from_slice(m2);
                out.add_term(mono, c1 * c2);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut by_degree: Vec<(&Vec<usize>, &BigInt)> = self.terms.iter().collect();
        by_degree.sort_by_key(|(m, _)| (m.len(), (*m).clone()));
        for (n, (mono, coeff)) in by_degree.into_iter().enumerate() {
            let neg = coeff < &BigInt::zero();
            let abs = if neg { -coeff } else { coeff.clone() };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs} ")?;
                }
                for (k, v) in mono.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "h{v}")?;
                }
            }
        }
        Ok(())
    }
}

// Series image of a single letter: 1 + h for a positive generator and the
// alternating geometric inverse 1 - h + h^2 - ... for a negative one.
fn letter_series(l: Letter, bound: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(bound);
    match l.sign {
        Sign::Plus => {
            if bound >= 1 {
                s.add_term(vec![l.generator], BigInt::one());
            }
        }
        Sign::Minus => {
            let mut c = BigInt::one();
            for deg in 1..=bound {
                c = -c;
                s.add_term(vec![l.generator; deg], c.clone());
            }
        }
    }
    s
}

/// Magnus expansion of `w` truncated at total degree `bound`: the product
/// of the letter images, so it is multiplicative over concatenation.
pub fn magnus_expansion(w: &Word, bound: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(bound);
    for &l in w.letters() {
        acc = acc
            .mul(&letter_series(l, bound))
            .expect("letter factors share the accumulator bound");
    }
    acc
}

/// Coefficient of the given monomial in the Magnus expansion of `w`.
pub fn magnus_coefficient(w: &Word, mono: &[usize], bound: usize) -> Result<BigInt, WordsError> {
    if mono.len() > bound {
        return Err(WordsError::MonomialTooLong {
            len: mono.len(),
            bound,
        });
    }
    Ok(magnus_expansion(w, bound).coeff(mono))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(Word::empty().free_reduce(), Word::empty());
        assert_eq!(w("g1 g1^-1").free_reduce(), Word::empty());
        assert_eq!(w("g1 g2 g2^-1 g1").free_reduce(), w("g1 g1"));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(exponent_sum(1, &w("g1 g2 g1^-1 g2^-1")), 0);
        assert_eq!(exponent_sum(1, &Word::empty()), 0);
        assert_eq!(exponent_sum(2, &w("g2 g2 g1 g2^-1")), 1);
    }

    #[test]
    fn pair_exponent_sum_examples() {
        assert_eq!(pair_exponent_sum(1, 2, &w("g1 g2 g1^-1 g2^-1")).unwrap(), 1);
        assert_eq!(pair_exponent_sum(1, 2, &Word::empty()).unwrap(), 0);
        assert_eq!(pair_exponent_sum(1, 2, &w("g1^-1 g2")).unwrap(), -1);
        assert_eq!(
            pair_exponent_sum(3, 3, &Word::empty()),
            Err(WordsError::EqualPairGenerators(3))
        );
    }

    #[test]
    fn series_mul_examples() {
        let one = TruncatedSeries::one(2);
        let a = TruncatedSeries::from_terms(2, [(vec![], 1), (vec![1], 1)]);
        let b = TruncatedSeries::from_terms(2, [(vec![], 1), (vec![2], 1)]);
        assert_eq!(a.mul(&one).unwrap(), a);

        let ab = TruncatedSeries::from_terms(
            2,
            [(vec![], 1), (vec![1], 1), (vec![2], 1), (vec![1, 2], 1)],
        );
        assert_eq!(a.mul(&b).unwrap(), ab);

        let inv = TruncatedSeries::from_terms(2, [(vec![], 1), (vec![1], -1), (vec![1, 1], 1)]);
        assert_eq!(a.mul(&inv).unwrap(), TruncatedSeries::one(2));
    }

    #[test]
    fn series_mul_rejects_mixed_bounds() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert_eq!(
            a.mul(&b),
            Err(WordsError::DegreeBoundMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn magnus_examples() {
        let single = magnus_expansion(&w("g1"), 2);
        assert_eq!(
            single,
            TruncatedSeries::from_terms(2, [(vec![], 1), (vec![1], 1)])
        );
        assert_eq!(magnus_expansion(&Word::empty(), 2), TruncatedSeries::one(2));

        let comm = magnus_expansion(&w("g1 g2 g1^-1 g2^-1"), 2);
        assert_eq!(
            comm,
            TruncatedSeries::from_terms(2, [(vec![], 1), (vec![1, 2], 1), (vec![2, 1], -1)])
        );
    }

    #[test]
    fn magnus_coefficient_examples() {
        let comm = w("g1 g2 g1^-1 g2^-1");
        assert_eq!(
            magnus_coefficient(&comm, &[1, 2], 2).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(magnus_coefficient(&comm, &[], 2).unwrap(), BigInt::from(1));
        let cube = w("g1 g1 g1");
        assert_eq!(magnus_coefficient(&cube, &[1], 1).unwrap(), BigInt::from(3));
        assert_eq!(
            magnus_coefficient(&cube, &[1, 1], 1),
            Err(WordsError::MonomialTooLong { len: 2, bound: 1 })
        );
    }

    #[test]
    fn word_text_round_trip() {
        let u = w("g1 g2^-1 g3");
        assert_eq!(u.to_string(), "g1 g2^-1 g3");
        assert_eq!(u.to_string().parse::<Word>().unwrap(), u);
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
        assert!("gx".parse::<Word>().is_err());
        assert!("g0".parse::<Word>().is_err());
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((1usize..=4, any::<bool>()), 0..=max_len).prop_map(|ls| {
            ls.into_iter()
                .map(|(g, pos)| Letter::new(g, if pos { Sign::Plus } else { Sign::Minus }))
                .collect()
        })
    }

    fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((prop::collection::vec(1usize..=3, 0..=2), -4i64..=4), 0..=6)
            .prop_map(|terms| TruncatedSeries::from_terms(2, terms))
    }

    proptest! {
        #[test]
        fn exponent_sum_is_additive(u in arb_word(20), v in arb_word(20)) {
            let uv = u.concat(&v);
            for g in 1..=4 {
                prop_assert_eq!(
                    exponent_sum(g, &uv),
                    exponent_sum(g, &u) + exponent_sum(g, &v)
                );
            }
        }

        #[test]
        fn pair_sum_cocycle_rule(u in arb_word(20), v in arb_word(20)) {
            let uv = u.concat(&v);
            prop_assert_eq!(
                pair_exponent_sum(1, 2, &uv).unwrap(),
                pair_exponent_sum(1, 2, &u).unwrap()
                    + pair_exponent_sum(1, 2, &v).unwrap()
                    + exponent_sum(1, &u) * exponent_sum(2, &v)
            );
        }

        #[test]
        fn pair_sum_symmetrization(u in arb_word(30)) {
            prop_assert_eq!(
                pair_exponent_sum(1, 2, &u).unwrap() + pair_exponent_sum(2, 1, &u).unwrap(),
                exponent_sum(1, &u) * exponent_sum(2, &u)
            );
        }

        #[test]
        fn magnus_low_degrees_match_exponent_sums(u in arb_word(25)) {
            for g in 1..=4usize {
                prop_assert_eq!(
                    magnus_coefficient(&u, &[g], 2).unwrap(),
                    BigInt::from(exponent_sum(g, &u))
                );
            }
            prop_assert_eq!(
                magnus_coefficient(&u, &[1, 2], 2).unwrap(),
                BigInt::from(pair_exponent_sum(1, 2, &u).unwrap())
            );
        }

        #[test]
        fn magnus_ignores_free_reduction(u in arb_word(25)) {
            prop_assert_eq!(magnus_expansion(&u.free_reduce(), 3), magnus_expansion(&u, 3));
        }

        #[test]
        fn magnus_is_multiplicative(u in arb_word(15), v in arb_word(15)) {
            let lhs = magnus_expansion(&u.concat(&v), 2);
            let rhs = magnus_expansion(&u, 2).mul(&magnus_expansion(&v, 2)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_is_idempotent_and_shrinking(u in arb_word(30)) {
            let r = u.free_reduce();
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(r.len() <= u.len());
            for pair in r.letters().windows(2) {
                prop_assert!(!(pair[0].generator == pair[1].generator
                    && pair[0].sign != pair[1].sign));
            }
        }

        #[test]
        fn series_mul_is_associative_and_unital(
            a in arb_series(),
            b in arb_series(),
            c in arb_series(),
        ) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let one = TruncatedSeries::one(2);
            prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
            prop_assert_eq!(one.mul(&a).unwrap(), a);
        }
    }
}
