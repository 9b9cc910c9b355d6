//! Longitude reduction modulo the lower central series of the link group
//! and the linking invariants extracted from its Magnus coefficients.
//!
//! Working modulo the n-th term of the lower central series, every arc
//! generator can be rewritten in the preferred meridians alone: at depth 2
//! a generator is just its component's meridian, and one depth higher each
//! letter of its conjugating word is replaced by the rewriting of that
//! letter at the previous depth. Longitudes rewritten this way feed the
//! Magnus coefficient extraction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::diagram::{
    longitude_with, wirtinger_with, Basepoints, LinkDiagram, LongitudeWord, WirtingerPresentation,
};
use crate::words::{magnus_coefficient, pair_exponent_sum, Letter, Sign, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MilnorError {
    #[error("lower central series depth must be at least 2, got {0}")]
    DepthTooSmall(usize),
    #[error("index sequence needs at least two entries, got {0}")]
    IndexTooShort(usize),
    #[error("component index {index} out of range 1..={count}")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("triple linking needs three distinct components, got {0}, {1}, {2}")]
    RepeatedIndex(usize, usize, usize),
    #[error(transparent)]
    Diagram(#[from] crate::diagram::DiagramError),
}

/// An integer considered modulo a nonnegative modulus. Modulus zero means
/// an ordinary integer; otherwise the stored value is normalized into
/// `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigInt,
    modulus: BigInt,
}

impl Residue {
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Residue {
        let modulus = modulus.into().abs();
        let mut value = value.into();
        if !modulus.is_zero() {
            value = value.mod_floor(&modulus);
        }
        Residue { value, modulus }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// True when the modulus is zero, so the value is a plain integer.
    pub fn is_integer(&self) -> bool {
        self.modulus.is_zero()
    }

    pub fn negated(&self) -> Residue {
        Residue::new(-&self.value, self.modulus.clone())
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Rewriting table: arc generator -> word in preferred meridians, with
/// letters renamed to component indices.
fn expansion_table(pres: &WirtingerPresentation, depth: usize) -> BTreeMap<usize, Word> {
    let mut table: BTreeMap<usize, Word> = pres
        .generators
        .iter()
        .map(|&g| {
            (
                g,
                Word::from_letters([Letter::positive(pres.component_of(g))]),
            )
        })
        .collect();
    for _ in 3..=depth {
        let prev = table;
        table = pres
            .generators
            .iter()
            .map(|&g| {
                let conj = apply_table(&prev, &pres.expression(g).conjugator);
                let mut word = conj.clone();
                word.push(Letter::positive(pres.component_of(g)));
                word.extend(&conj.inverse());
                (g, word.free_reduce())
            })
            .collect();
    }
    table
}

fn apply_table(table: &BTreeMap<usize, Word>, word: &Word) -> Word {
    let mut out = Word::empty();
    for l in word.letters() {
        let image = &table[&l.generator];
        match l.sign {
            Sign::Plus => out.extend(image),
            Sign::Minus => out.extend(&image.inverse()),
        }
    }
    out
}

/// The longitude as a word in preferred meridians only, valid modulo the
/// `depth`-th lower central series term. Letters are component indices.
pub fn reduce_mod_lcs(
    pres: &WirtingerPresentation,
    long: &LongitudeWord,
    depth: usize,
) -> Result<Word, MilnorError> {
    if depth < 2 {
        return Err(MilnorError::DepthTooSmall(depth));
    }
    let table = expansion_table(pres, depth);
    let mut out = apply_table(&table, &long.word);
    let correction = Word::from_letters([Letter::positive(long.component)]);
    out.extend(&correction.pow(long.framing_correction));
    Ok(out.free_reduce())
}

fn check_indices(diagram: &LinkDiagram, indices: &[usize]) -> Result<(), MilnorError> {
    if indices.len() < 2 {
        return Err(MilnorError::IndexTooShort(indices.len()));
    }
    let count = diagram.component_count();
    for &index in indices {
        if index == 0 || index > count {
            return Err(MilnorError::ComponentOutOfRange { index, count });
        }
    }
    Ok(())
}

/// Coefficient of `h_{i_1} ... h_{i_{r-1}}` in the Magnus expansion of the
/// last indexed component's longitude, rewritten at depth `r`.
pub fn mu(diagram: &LinkDiagram, indices: &[usize]) -> Result<BigInt, MilnorError> {
    mu_with(diagram, indices, &Basepoints::default_for(diagram))
}

pub fn mu_with(
    diagram: &LinkDiagram,
    indices: &[usize],
    basepoints: &Basepoints,
) -> Result<BigInt, MilnorError> {
    let depth = indices.len();
    mu_at_depth(diagram, indices, depth, basepoints)
}

/// Same coefficient computed at an explicit rewriting depth `n >= r`;
/// the result does not depend on `n` in that range.
pub fn mu_at_depth(
    diagram: &LinkDiagram,
    indices: &[usize],
    depth: usize,
    basepoints: &Basepoints,
) -> Result<BigInt, MilnorError> {
    check_indices(diagram, indices)?;
    let pres = wirtinger_with(diagram, basepoints)?;
    let long = longitude_with(diagram, *indices.last().unwrap(), basepoints)?;
    let reduced = reduce_mod_lcs(&pres, &long, depth)?;
    let mono = &indices[..indices.len() - 1];
    Ok(magnus_coefficient(&reduced, mono, mono.len()).expect("monomial length equals bound"))
}

/// Greatest common divisor of the lower order coefficients, over every
/// order-preserving proper subsequence of length at least 2. The empty
/// gcd is 0.
pub fn delta(diagram: &LinkDiagram, indices: &[usize]) -> Result<BigInt, MilnorError> {
    delta_with(diagram, indices, &Basepoints::default_for(diagram))
}

pub fn delta_with(
    diagram: &LinkDiagram,
    indices: &[usize],
    basepoints: &Basepoints,
) -> Result<BigInt, MilnorError> {
    check_indices(diagram, indices)?;
    let mut acc = BigInt::zero();
    for sub in proper_subsequences(indices) {
        let coeff = mu_with(diagram, &sub, basepoints)?;
        acc = acc.gcd(&coeff);
    }
    Ok(acc)
}

fn proper_subsequences(indices: &[usize]) -> Vec<Vec<usize>> {
    let n = indices.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let picked = mask.count_ones() as usize;
        if picked < 2 || picked == n {
            continue;
        }
        let sub: Vec<usize> = (0..n)
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| indices[k])
            .collect();
        if !out.contains(&sub) {
            out.push(sub);
        }
    }
    out
}

pub fn mu_bar(diagram: &LinkDiagram, indices: &[usize]) -> Result<Residue, MilnorError> {
    mu_bar_with(diagram, indices, &Basepoints::default_for(diagram))
}

pub fn mu_bar_with(
    diagram: &LinkDiagram,
    indices: &[usize],
    basepoints: &Basepoints,
) -> Result<Residue, MilnorError> {
    let value = mu_with(diagram, indices, basepoints)?;
    let modulus = delta_with(diagram, indices, basepoints)?;
    Ok(Residue::new(value, modulus))
}

/// Triple linking number via the signed-pair shortcut on the depth-3
/// rewritten longitude; meridians other than the first two indexed ones
/// are ignored by the pair count.
pub fn triple(diagram: &LinkDiagram, i: usize, j: usize, k: usize) -> Result<Residue, MilnorError> {
    triple_with(diagram, i, j, k, &Basepoints::default_for(diagram))
}

pub fn triple_with(
    diagram: &LinkDiagram,
    i: usize,
    j: usize,
    k: usize,
    basepoints: &Basepoints,
) -> Result<Residue, MilnorError> {
    if i == j || j == k || i == k {
        return Err(MilnorError::RepeatedIndex(i, j, k));
    }
    check_indices(diagram, &[i, j, k])?;
    let pres = wirtinger_with(diagram, basepoints)?;
    let long = longitude_with(diagram, k, basepoints)?;
    let reduced = reduce_mod_lcs(&pres, &long, 3)?;
    let value = pair_exponent_sum(i, j, &reduced).expect("indices are distinct");
    let modulus = delta_with(diagram, &[i, j, k], basepoints)?;
    Ok(Residue::new(value, modulus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{BORROMEAN, HOPF};
    use crate::diagram::{longitude, wirtinger};

    const UNLINK2: &str = r#"{"crossings": [], "unknotted_components": 2}"#;
    const UNLINK3: &str = r#"{"crossings": [], "unknotted_components": 3}"#;

    #[test]
    fn residue_normalization() {
        assert_eq!(Residue::new(5, 2), Residue::new(1, 2));
        assert_eq!(Residue::new(-1, 3), Residue::new(2, 3));
        assert_eq!(Residue::new(-1, 0).value(), &BigInt::from(-1));
        assert_eq!(Residue::new(7, -3), Residue::new(1, 3));
        assert_eq!(Residue::new(1, 0).to_string(), "1 (mod 0)");
        assert_eq!(Residue::new(5, 2).to_string(), "1 (mod 2)");
        assert_eq!(Residue::new(1, 2).negated(), Residue::new(1, 2));
        assert_eq!(Residue::new(1, 3).negated(), Residue::new(2, 3));
    }

    #[test]
    fn reduce_depth_two_replaces_letterwise() {
        let d = LinkDiagram::parse(HOPF).unwrap();
        let pres = wirtinger(&d);
        let long = longitude(&d, 2).unwrap();
        let u = reduce_mod_lcs(&pres, &long, 2).unwrap();
        assert_eq!(u, "g1".parse().unwrap());
    }

    #[test]
    fn reduce_unknot_is_empty_at_any_depth() {
        let d = LinkDiagram::parse(r#"{"crossings": [], "unknotted_components": 1}"#).unwrap();
        let pres = wirtinger(&d);
        let long = longitude(&d, 1).unwrap();
        for depth in 2..6 {
            assert!(reduce_mod_lcs(&pres, &long, depth).unwrap().is_empty());
        }
    }

    #[test]
    fn reduce_rejects_shallow_depth() {
        let d = LinkDiagram::parse(HOPF).unwrap();
        let pres = wirtinger(&d);
        let long = longitude(&d, 2).unwrap();
        assert_eq!(
            reduce_mod_lcs(&pres, &long, 1),
            Err(MilnorError::DepthTooSmall(1))
        );
    }

    #[test]
    fn borromean_longitude_reduces_to_commutator() {
        let d = LinkDiagram::parse(BORROMEAN).unwrap();
        let pres = wirtinger(&d);
        let long = longitude(&d, 3).unwrap();
        let u = reduce_mod_lcs(&pres, &long, 3).unwrap();
        assert_eq!(pair_exponent_sum(1, 2, &u).unwrap(), 1);
        assert_eq!(u, "g1 g2 g1^-1 g2^-1".parse().unwrap());
    }

    #[test]
    fn mu_examples() {
        let hopf = LinkDiagram::parse(HOPF).unwrap();
        assert_eq!(mu(&hopf, &[1, 2]).unwrap(), BigInt::from(1));

        let unlink = LinkDiagram::parse(UNLINK2).unwrap();
        assert_eq!(mu(&unlink, &[1, 2]).unwrap(), BigInt::zero());

        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        assert_eq!(mu(&borromean, &[1, 2, 3]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn mu_rejects_bad_indices() {
        let hopf = LinkDiagram::parse(HOPF).unwrap();
        assert_eq!(mu(&hopf, &[1]), Err(MilnorError::IndexTooShort(1)));
        assert_eq!(
            mu(&hopf, &[1, 3]),
            Err(MilnorError::ComponentOutOfRange { index: 3, count: 2 })
        );
    }

    #[test]
    fn delta_examples() {
        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        assert_eq!(delta(&borromean, &[1, 2, 3]).unwrap(), BigInt::zero());
        assert_eq!(delta(&borromean, &[1, 2]).unwrap(), BigInt::zero());

        let hopf = LinkDiagram::parse(HOPF).unwrap();
        assert_eq!(delta(&hopf, &[1, 2]).unwrap(), BigInt::zero());
    }

    #[test]
    fn subsequences_of_a_triple_are_its_pairs() {
        assert_eq!(
            proper_subsequences(&[1, 2, 3]),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert!(proper_subsequences(&[1, 2]).is_empty());
    }

    #[test]
    fn mu_bar_examples() {
        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        assert_eq!(mu_bar(&borromean, &[1, 2, 3]).unwrap(), Residue::new(1, 0));

        let unlink = LinkDiagram::parse(UNLINK3).unwrap();
        assert_eq!(mu_bar(&unlink, &[1, 2, 3]).unwrap(), Residue::new(0, 0));
    }

    #[test]
    fn triple_examples() {
        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        assert_eq!(triple(&borromean, 1, 2, 3).unwrap(), Residue::new(1, 0));

        let unlink = LinkDiagram::parse(UNLINK3).unwrap();
        assert_eq!(triple(&unlink, 1, 2, 3).unwrap(), Residue::new(0, 0));

        assert_eq!(
            triple(&borromean, 1, 1, 3),
            Err(MilnorError::RepeatedIndex(1, 1, 3))
        );
    }

    #[test]
    fn pairwise_mu_is_symmetric() {
        let hopf = LinkDiagram::parse(HOPF).unwrap();
        assert_eq!(mu(&hopf, &[1, 2]).unwrap(), mu(&hopf, &[2, 1]).unwrap());
    }

    #[test]
    fn mu_is_stable_in_depth() {
        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        let bp = Basepoints::default_for(&borromean);
        let d3 = mu_at_depth(&borromean, &[1, 2, 3], 3, &bp).unwrap();
        let d4 = mu_at_depth(&borromean, &[1, 2, 3], 4, &bp).unwrap();
        let d5 = mu_at_depth(&borromean, &[1, 2, 3], 5, &bp).unwrap();
        assert_eq!(d3, d4);
        assert_eq!(d4, d5);
    }

    // Switching every crossing inverts all meridians, and the pair count
    // is blind to a global sign flip of its letters; reversing every
    // component inverts the longitude as well and does negate the value.
    #[test]
    fn mirror_preserves_and_reversal_negates_triple() {
        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        assert_eq!(
            triple(&borromean.mirror(), 1, 2, 3).unwrap(),
            Residue::new(1, 0)
        );
        assert_eq!(
            triple(&borromean.reversed(), 1, 2, 3).unwrap(),
            Residue::new(-1, 0)
        );
        assert_eq!(
            triple(&borromean.mirror().reversed(), 1, 2, 3).unwrap(),
            Residue::new(-1, 0)
        );
    }

    // Longer index sequences run through the same recursion: values are
    // stable in the rewriting depth and the modulus collapses to the gcd
    // of every shorter coefficient.
    #[test]
    fn length_four_indices_are_supported() {
        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        let bp = Basepoints::default_for(&borromean);
        for indices in [[1, 1, 2, 3], [1, 2, 3, 3], [2, 1, 3, 1]] {
            let d4 = mu_at_depth(&borromean, &indices, 4, &bp).unwrap();
            let d5 = mu_at_depth(&borromean, &indices, 5, &bp).unwrap();
            assert_eq!(d4, d5, "depth stability for {indices:?}");
        }
        // [1,2,3] is a subsequence with coefficient 1, so the gcd is 1
        assert_eq!(delta(&borromean, &[1, 2, 3, 3]).unwrap(), BigInt::from(1));
        assert_eq!(
            mu_bar(&borromean, &[1, 2, 3, 3]).unwrap(),
            Residue::new(0, 1)
        );
    }

    #[test]
    fn rewritten_longitude_is_null_homologous() {
        let d = LinkDiagram::parse(r#"{"crossings": [[1, 1, 2, 2]]}"#).unwrap();
        let pres = wirtinger(&d);
        let long = longitude(&d, 1).unwrap();
        let u = reduce_mod_lcs(&pres, &long, 3).unwrap();
        assert_eq!(crate::words::exponent_sum(1, &u), 0);
    }
}
