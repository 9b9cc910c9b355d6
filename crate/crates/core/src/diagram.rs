//! PD-code link diagrams and the presentation data read from them.
//!
//! A crossing is a tuple `(a, b, c, d)` of arc labels listed
//! counterclockwise starting from the incoming under-arc `a`; `c` is the
//! outgoing under-arc. Every arc label names a diagram edge and occurs
//! exactly twice in the whole code. The crossing sign is `+1` when the
//! over-strand runs `d -> b` and `-1` when it runs `b -> d`; the
//! direction is recovered from the global successor structure.
//! Crossing-free unknotted components carry no crossings, so they are
//! declared by count and get one synthesized arc each.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::words::{Letter, Sign, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid PD JSON: {0}")]
    Json(String),
    #[error("crossing {index} has {len} entries, expected 4")]
    BadArity { index: usize, len: usize },
    #[error("arc labels must be positive (crossing {index})")]
    ZeroLabel { index: usize },
    #[error("arc label {label} occurs {count} times, expected 2")]
    BadLabelCount { label: usize, count: usize },
    #[error("inconsistent orientation at arc label {label}")]
    InconsistentOrientation { label: usize },
    #[error("declared {declared} components but diagram has {found}")]
    ComponentCountMismatch { declared: usize, found: usize },
    #[error("no component {component} in a diagram with {count} components")]
    UnknownComponent { component: usize, count: usize },
    #[error("arc {arc} does not belong to component {component}")]
    ForeignBasepoint { arc: usize, component: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub under_in: usize,
    pub b: usize,
    pub under_out: usize,
    pub d: usize,
}

impl Crossing {
    fn labels(&self) -> [usize; 4] {
        [self.under_in, self.b, self.under_out, self.d]
    }
}

#[derive(Deserialize)]
struct PdFile {
    crossings: Vec<Vec<usize>>,
    #[serde(default)]
    unknotted_components: usize,
    #[serde(default)]
    components: Option<usize>,
    #[serde(default)]
    name: Option<String>,
}

/// A validated oriented link diagram with its derived combinatorics.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    name: Option<String>,
    /// sign of each crossing, `+1` iff the over-strand runs d -> b
    signs: Vec<i64>,
    /// incoming over-arc of each crossing
    over_in: Vec<usize>,
    /// arc -> next arc along its component
    successor: BTreeMap<usize, usize>,
    /// arcs of each component in traversal order from the lowest label;
    /// components are ordered by smallest arc label, synthesized arcs of
    /// crossing-free unknots come last
    components: Vec<Vec<usize>>,
    /// arc -> 1-based component index
    component_of: BTreeMap<usize, usize>,
    /// arc -> crossing index it ends at, and whether it ends under
    ends_at: BTreeMap<usize, (usize, bool)>,
    synthesized_from: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Polarity {
    /// the arc ends at this slot
    Head,
    /// the arc starts at this slot
    Tail,
}

impl LinkDiagram {
    /// Parses and validates the PD JSON schema.
    pub fn parse(text: &str) -> Result<LinkDiagram, DiagramError> {
        let file: PdFile =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        let mut crossings = Vec::with_capacity(file.crossings.len());
        for (index, raw) in file.crossings.iter().enumerate() {
            if raw.len() != 4 {
                return Err(DiagramError::BadArity {
                    index,
                    len: raw.len(),
                });
            }
            if raw.contains(&0) {
                return Err(DiagramError::ZeroLabel { index });
            }
            crossings.push(Crossing {
                under_in: raw[0],
                b: raw[1],
                under_out: raw[2],
                d: raw[3],
            });
        }
        LinkDiagram::from_crossings(
            crossings,
            file.unknotted_components,
            file.components,
            file.name,
        )
    }

    pub fn from_crossings(
        crossings: Vec<Crossing>,
        unknotted_components: usize,
        declared_components: Option<usize>,
        name: Option<String>,
    ) -> Result<LinkDiagram, DiagramError> {
        let mut occurrences: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            for (slot, &label) in x.labels().iter().enumerate() {
                occurrences.entry(label).or_default().push((ci, slot));
            }
        }
        for (&label, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(DiagramError::BadLabelCount {
                    label,
                    count: occ.len(),
                });
            }
        }

        let Orientation {
            signs,
            over_in,
            mut successor,
        } = resolve_orientations(&crossings, &occurrences)?;

        // Decompose the successor permutation into cycles.
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut component_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut seen: BTreeMap<usize, bool> = BTreeMap::new();
        for &start in occurrences.keys() {
            if seen.get(&start).copied().unwrap_or(false) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                cycle.push(cur);
                seen.insert(cur, true);
                cur = successor[&cur];
                if cur == start {
                    break;
                }
            }
            components.push(cycle);
        }
        components.sort_by_key(|c| c.iter().copied().min().unwrap());

        // One synthesized arc per declared crossing-free unknot.
        let synthesized_from = occurrences.keys().copied().max().unwrap_or(0) + 1;
        for n in 0..unknotted_components {
            let label = synthesized_from + n;
            successor.insert(label, label);
            components.push(vec![label]);
        }

        if let Some(declared) = declared_components {
            if declared != components.len() {
                return Err(DiagramError::ComponentCountMismatch {
                    declared,
                    found: components.len(),
                });
            }
        }

        for (ci, cycle) in components.iter().enumerate() {
            for &arc in cycle {
                component_of.insert(arc, ci + 1);
            }
        }

        // Rotate each cycle so traversal starts at the lowest label.
        let components: Vec<Vec<usize>> = components
            .into_iter()
            .map(|cycle| {
                let k = cycle
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &a)| a)
                    .map(|(i, _)| i)
                    .unwrap();
                let mut rotated = cycle[k..].to_vec();
                rotated.extend_from_slice(&cycle[..k]);
                rotated
            })
            .collect();

        let mut ends_at = BTreeMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            ends_at.insert(x.under_in, (ci, true));
            ends_at.insert(over_in[ci], (ci, false));
        }

        Ok(LinkDiagram {
            crossings,
            name,
            signs,
            over_in,
            successor,
            components,
            component_of,
            ends_at,
            synthesized_from,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_signs(&self) -> &[i64] {
        &self.signs
    }

    /// Incoming over-arc at the given crossing.
    pub fn over_arc(&self, crossing: usize) -> usize {
        self.over_in[crossing]
    }

    pub fn arcs(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.iter().flatten().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.successor.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Arcs of a (1-based) component in traversal order from its basepoint.
    pub fn component_arcs(&self, component: usize) -> Result<&[usize], DiagramError> {
        if component == 0 || component > self.components.len() {
            return Err(DiagramError::UnknownComponent {
                component,
                count: self.components.len(),
            });
        }
        Ok(&self.components[component - 1])
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.component_of[&arc]
    }

    pub fn successor(&self, arc: usize) -> usize {
        self.successor[&arc]
    }

    /// Whether the arc is one synthesized for a crossing-free unknot.
    pub fn is_synthesized(&self, arc: usize) -> bool {
        arc >= self.synthesized_from
    }

    /// Signed self-crossing count of a component.
    pub fn self_writhe(&self, component: usize) -> Result<i64, DiagramError> {
        self.component_arcs(component)?;
        Ok(self
            .crossings
            .iter()
            .enumerate()
            .filter(|(ci, x)| {
                self.component_of[&x.under_in] == component
                    && self.component_of[&self.over_in[*ci]] == component
            })
            .map(|(ci, _)| self.signs[ci])
            .sum())
    }

    /// Signed count of crossings between two distinct components.
    pub fn mutual_crossing_sum(&self, a: usize, b: usize) -> Result<i64, DiagramError> {
        self.component_arcs(a)?;
        self.component_arcs(b)?;
        Ok(self
            .crossings
            .iter()
            .enumerate()
            .filter(|(ci, x)| {
                let under = self.component_of[&x.under_in];
                let over = self.component_of[&self.over_in[*ci]];
                (under, over) == (a, b) || (under, over) == (b, a)
            })
            .map(|(ci, _)| self.signs[ci])
            .sum())
    }

    /// The same diagram with every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(ci, x)| {
                let [a, b, c, d] = x.labels();
                // Switching a crossing re-reads the tuple from the new
                // incoming under-arc, one slot around the crossing.
                if self.signs[ci] > 0 {
                    Crossing {
                        under_in: d,
                        b: a,
                        under_out: b,
                        d: c,
                    }
                } else {
                    Crossing {
                        under_in: b,
                        b: c,
                        under_out: d,
                        d: a,
                    }
                }
            })
            .collect();
        LinkDiagram::from_crossings(
            crossings,
            self.components.len() - self.real_component_count(),
            None,
            self.name.as_ref().map(|n| format!("{n} (mirror)")),
        )
        .expect("mirror of a valid diagram is valid")
    }

    /// The same diagram with every component's orientation reversed:
    /// each tuple is re-read from the old outgoing under-arc, which is
    /// the incoming one after reversal. Crossing signs are unchanged.
    pub fn reversed(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing {
                under_in: x.under_out,
                b: x.d,
                under_out: x.under_in,
                d: x.b,
            })
            .collect();
        LinkDiagram::from_crossings(
            crossings,
            self.components.len() - self.real_component_count(),
            None,
            self.name.as_ref().map(|n| format!("{n} (reversed)")),
        )
        .expect("reversal of a valid diagram is valid")
    }

    fn real_component_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.iter().any(|&a| a < self.synthesized_from))
            .count()
    }

    pub fn to_json_string(&self) -> String {
        let crossings: Vec<[usize; 4]> = self.crossings.iter().map(|x| x.labels()).collect();
        let unknotted = self.components.len() - self.real_component_count();
        let mut obj = serde_json::Map::new();
        obj.insert("crossings".into(), serde_json::json!(crossings));
        if unknotted > 0 {
            obj.insert("unknotted_components".into(), serde_json::json!(unknotted));
        }
        obj.insert(
            "components".into(),
            serde_json::json!(self.components.len()),
        );
        if let Some(name) = &self.name {
            obj.insert("name".into(), serde_json::json!(name));
        }
        serde_json::to_string_pretty(&serde_json::Value::Object(obj)).unwrap()
    }
}

/// Decide the over-strand direction of every crossing.
///
/// Each arc label occurs twice and must end at exactly one occurrence and
/// start at the other; under slots are forced, and the over pair at a
/// crossing takes opposite polarities. Constraints propagate to a fixpoint;
/// any leftover chain (a component that never passes under) is closed with
/// the d -> b direction at its lowest unresolved crossing.
struct Orientation {
    signs: Vec<i64>,
    over_in: Vec<usize>,
    successor: BTreeMap<usize, usize>,
}

fn resolve_orientations(
    crossings: &[Crossing],
    occurrences: &BTreeMap<usize, Vec<(usize, usize)>>,
) -> Result<Orientation, DiagramError> {
    const SLOT_B: usize = 1;
    const SLOT_D: usize = 3;

    fn assign(
        crossings: &[Crossing],
        polarity: &mut [[Option<Polarity>; 4]],
        queue: &mut Vec<(usize, usize)>,
        ci: usize,
        slot: usize,
        p: Polarity,
    ) -> Result<(), DiagramError> {
        match polarity[ci][slot] {
            None => {
                polarity[ci][slot] = Some(p);
                queue.push((ci, slot));
                Ok(())
            }
            Some(existing) if existing == p => Ok(()),
            Some(_) => Err(DiagramError::InconsistentOrientation {
                label: crossings[ci].labels()[slot],
            }),
        }
    }

    fn propagate(
        crossings: &[Crossing],
        occurrences: &BTreeMap<usize, Vec<(usize, usize)>>,
        polarity: &mut [[Option<Polarity>; 4]],
        queue: &mut Vec<(usize, usize)>,
    ) -> Result<(), DiagramError> {
        while let Some((ci, slot)) = queue.pop() {
            let p = polarity[ci][slot].unwrap();
            let flipped = match p {
                Polarity::Head => Polarity::Tail,
                Polarity::Tail => Polarity::Head,
            };
            let label = crossings[ci].labels()[slot];
            // The label's other occurrence takes the opposite polarity.
            for &(cj, sj) in &occurrences[&label] {
                if (cj, sj) != (ci, slot) {
                    assign(crossings, polarity, queue, cj, sj, flipped)?;
                }
            }
            // The over pair at a crossing is one head plus one tail.
            if slot == SLOT_B || slot == SLOT_D {
                let partner = SLOT_B + SLOT_D - slot;
                assign(crossings, polarity, queue, ci, partner, flipped)?;
            }
        }
        Ok(())
    }

    let mut polarity: Vec<[Option<Polarity>; 4]> = vec![[None; 4]; crossings.len()];
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for ci in 0..crossings.len() {
        assign(crossings, &mut polarity, &mut queue, ci, 0, Polarity::Head)?;
        assign(crossings, &mut polarity, &mut queue, ci, 2, Polarity::Tail)?;
    }
    propagate(crossings, occurrences, &mut polarity, &mut queue)?;
    for ci in 0..crossings.len() {
        if polarity[ci][SLOT_D].is_none() {
            assign(
                crossings,
                &mut polarity,
                &mut queue,
                ci,
                SLOT_D,
                Polarity::Head,
            )?;
            propagate(crossings, occurrences, &mut polarity, &mut queue)?;
        }
    }

    let mut signs = Vec::with_capacity(crossings.len());
    let mut over_in = Vec::with_capacity(crossings.len());
    let mut successor: BTreeMap<usize, usize> = BTreeMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        if successor.insert(x.under_in, x.under_out).is_some() {
            return Err(DiagramError::InconsistentOrientation { label: x.under_in });
        }
        let (from, to, sign) = match polarity[ci][SLOT_D].unwrap() {
            Polarity::Head => (x.d, x.b, 1),
            Polarity::Tail => (x.b, x.d, -1),
        };
        if successor.insert(from, to).is_some() {
            return Err(DiagramError::InconsistentOrientation { label: from });
        }
        signs.push(sign);
        over_in.push(from);
    }

    // The map is a permutation exactly when every label is hit once.
    let mut targets: BTreeMap<usize, usize> = BTreeMap::new();
    for &t in successor.values() {
        *targets.entry(t).or_insert(0) += 1;
    }
    for &label in occurrences.keys() {
        if targets.get(&label).copied().unwrap_or(0) != 1 || !successor.contains_key(&label) {
            return Err(DiagramError::InconsistentOrientation { label });
        }
    }

    Ok(Orientation {
        signs,
        over_in,
        successor,
    })
}

/// Which arc to start each component walk at. Defaults to the lowest
/// labeled arc of every component.
#[derive(Clone, Debug, Default)]
pub struct Basepoints(BTreeMap<usize, usize>);

impl Basepoints {
    pub fn default_for(_diagram: &LinkDiagram) -> Basepoints {
        Basepoints(BTreeMap::new())
    }

    /// Basepoint of one component moved along to the next arc.
    pub fn shifted(diagram: &LinkDiagram, component: usize) -> Result<Basepoints, DiagramError> {
        let arcs = diagram.component_arcs(component)?;
        let mut map = BTreeMap::new();
        if arcs.len() > 1 {
            map.insert(component, arcs[1]);
        }
        Ok(Basepoints(map))
    }

    pub fn with(mut self, component: usize, arc: usize) -> Basepoints {
        self.0.insert(component, arc);
        self
    }

    fn arc_for(&self, diagram: &LinkDiagram, component: usize) -> Result<usize, DiagramError> {
        let arcs = diagram.component_arcs(component)?;
        match self.0.get(&component) {
            None => Ok(arcs[0]),
            Some(&arc) => {
                if arcs.contains(&arc) {
                    Ok(arc)
                } else {
                    Err(DiagramError::ForeignBasepoint { arc, component })
                }
            }
        }
    }
}

/// Expression of one arc generator as a conjugate of its component's
/// preferred meridian: `g = w p w^{-1}` with the conjugator `w` written in
/// arc generators, built by walking the component from its basepoint and
/// collecting the signed over-arc letter at every undercrossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianExpression {
    pub conjugator: Word,
    pub meridian: usize,
    pub component: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub incoming: usize,
    pub outgoing: usize,
    pub over: usize,
    pub sign: i64,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (e, e_inv) = if self.sign > 0 {
            ("", "^-1")
        } else {
            ("^-1", "")
        };
        write!(
            f,
            "g{} = g{}{} g{} g{}{}",
            self.outgoing, self.over, e, self.incoming, self.over, e_inv
        )
    }
}

/// Generators (one per arc), one relation per crossing, and the meridian
/// expression of every generator relative to the chosen basepoints.
#[derive(Clone, Debug)]
pub struct WirtingerPresentation {
    pub generators: Vec<usize>,
    pub relations: Vec<Relation>,
    preferred: Vec<usize>,
    expressions: BTreeMap<usize, MeridianExpression>,
    component_of: BTreeMap<usize, usize>,
    component_count: usize,
}

impl WirtingerPresentation {
    pub fn preferred_meridian(&self, component: usize) -> usize {
        self.preferred[component - 1]
    }

    pub fn expression(&self, generator: usize) -> &MeridianExpression {
        &self.expressions[&generator]
    }

    pub fn component_of(&self, generator: usize) -> usize {
        self.component_of[&generator]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }
}

pub fn wirtinger(diagram: &LinkDiagram) -> WirtingerPresentation {
    wirtinger_with(diagram, &Basepoints::default_for(diagram))
        .expect("default basepoints are always valid")
}

pub fn wirtinger_with(
    diagram: &LinkDiagram,
    basepoints: &Basepoints,
) -> Result<WirtingerPresentation, DiagramError> {
    let mut preferred = Vec::new();
    let mut expressions = BTreeMap::new();
    for component in 1..=diagram.component_count() {
        let base = basepoints.arc_for(diagram, component)?;
        preferred.push(base);
        expressions.insert(
            base,
            MeridianExpression {
                conjugator: Word::empty(),
                meridian: base,
                component,
            },
        );
        let mut conjugator = Word::empty();
        for (arc, letter) in walk_from(diagram, component, base)? {
            if let Some(l) = letter {
                conjugator.prepend(l);
            }
            if arc != base {
                expressions.insert(
                    arc,
                    MeridianExpression {
                        conjugator: conjugator.clone(),
                        meridian: base,
                        component,
                    },
                );
            }
        }
    }

    let relations = diagram
        .crossings()
        .iter()
        .enumerate()
        .map(|(ci, x)| Relation {
            incoming: x.under_in,
            outgoing: x.under_out,
            over: diagram.over_arc(ci),
            sign: diagram.crossing_signs()[ci],
        })
        .collect();

    Ok(WirtingerPresentation {
        generators: diagram.arcs().collect(),
        relations,
        preferred,
        expressions,
        component_of: diagram
            .arcs()
            .map(|a| (a, diagram.component_of(a)))
            .collect(),
        component_count: diagram.component_count(),
    })
}

/// Walk one component from `base`, yielding each next arc together with
/// the over-arc letter picked up when the step passes under a crossing.
fn walk_from(
    diagram: &LinkDiagram,
    component: usize,
    base: usize,
) -> Result<Vec<(usize, Option<Letter>)>, DiagramError> {
    let arcs = diagram.component_arcs(component)?;
    if diagram.is_synthesized(base) {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(arcs.len());
    let mut cur = base;
    for _ in 0..arcs.len() {
        let next = diagram.successor(cur);
        let letter = match diagram.ends_at.get(&cur) {
            Some(&(ci, true)) => Some(Letter::new(
                diagram.over_arc(ci),
                Sign::of(diagram.crossing_signs()[ci]),
            )),
            _ => None,
        };
        out.push((next, letter));
        cur = next;
    }
    Ok(out)
}

/// Longitude of one component read from the diagram: the signed over-arc
/// letters met along the component, plus a power of the component's own
/// preferred meridian cancelling the self-writhe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongitudeWord {
    pub component: usize,
    pub word: Word,
    pub framing_correction: i64,
}

pub fn longitude(diagram: &LinkDiagram, component: usize) -> Result<LongitudeWord, DiagramError> {
    longitude_with(diagram, component, &Basepoints::default_for(diagram))
}

pub fn longitude_with(
    diagram: &LinkDiagram,
    component: usize,
    basepoints: &Basepoints,
) -> Result<LongitudeWord, DiagramError> {
    let base = basepoints.arc_for(diagram, component)?;
    let word: Word = walk_from(diagram, component, base)?
        .into_iter()
        .filter_map(|(_, letter)| letter)
        .collect();
    Ok(LongitudeWord {
        component,
        word,
        framing_correction: -diagram.self_writhe(component)?,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const HOPF: &str = r#"{"crossings": [[3, 2, 4, 1], [2, 3, 1, 4]], "name": "hopf"}"#;
    pub(crate) const BORROMEAN: &str = r#"{"crossings": [
        [5, 2, 6, 1], [2, 9, 3, 10], [10, 7, 11, 6],
        [7, 3, 8, 4], [4, 12, 1, 11], [12, 8, 9, 5]]}"#;

    #[test]
    fn parse_unknot_without_crossings() {
        let d = LinkDiagram::parse(r#"{"crossings": [], "unknotted_components": 1}"#).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.arc_count(), 1);
        assert!(d.is_synthesized(1));
    }

    #[test]
    fn parse_positive_hopf() {
        let d = LinkDiagram::parse(HOPF).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.arc_count(), 4);
        assert_eq!(d.crossing_signs(), &[1, 1]);
        assert_eq!(d.component_arcs(1).unwrap(), &[1, 2]);
        assert_eq!(d.component_arcs(2).unwrap(), &[3, 4]);
        assert_eq!(d.mutual_crossing_sum(1, 2).unwrap(), 2);
    }

    #[test]
    fn parse_borromean() {
        let d = LinkDiagram::parse(BORROMEAN).unwrap();
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.arc_count(), 12);
        assert_eq!(d.crossing_signs(), &[1, -1, 1, -1, 1, -1]);
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(d.mutual_crossing_sum(a, b).unwrap(), 0);
        }
    }

    #[test]
    fn parse_rejects_bad_inputs() {
        assert!(matches!(
            LinkDiagram::parse(r#"{"crossings": [[1, 2, 3]]}"#),
            Err(DiagramError::BadArity { index: 0, len: 3 })
        ));
        assert!(matches!(
            LinkDiagram::parse(r#"{"crossings": [[1, 2, 3, 4]]}"#),
            Err(DiagramError::BadLabelCount { .. })
        ));
        assert!(matches!(
            LinkDiagram::parse(r#"{"crossings": [[1, 2, 3, 4], [1, 4, 3, 2]]}"#),
            Err(DiagramError::InconsistentOrientation { .. })
        ));
        assert!(matches!(
            LinkDiagram::parse(r#"{"crossings": [], "unknotted_components": 1, "components": 2}"#),
            Err(DiagramError::ComponentCountMismatch {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(
            LinkDiagram::parse("not json"),
            Err(DiagramError::Json(_))
        ));
    }

    #[test]
    fn wirtinger_counts() {
        let unknot = LinkDiagram::parse(r#"{"crossings": [], "unknotted_components": 1}"#).unwrap();
        let p = wirtinger(&unknot);
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.relations.len(), 0);

        let hopf = LinkDiagram::parse(HOPF).unwrap();
        let p = wirtinger(&hopf);
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.preferred_meridian(1), 1);
        assert_eq!(p.preferred_meridian(2), 3);

        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        let p = wirtinger(&borromean);
        assert_eq!(p.generators.len(), 12);
        assert_eq!(p.relations.len(), 6);
    }

    #[test]
    fn longitude_examples() {
        let unknot = LinkDiagram::parse(r#"{"crossings": [], "unknotted_components": 1}"#).unwrap();
        let l = longitude(&unknot, 1).unwrap();
        assert!(l.word.is_empty());
        assert_eq!(l.framing_correction, 0);

        let hopf = LinkDiagram::parse(HOPF).unwrap();
        let l = longitude(&hopf, 2).unwrap();
        assert_eq!(l.word, "g1".parse().unwrap());
        assert_eq!(l.framing_correction, 0);

        let borromean = LinkDiagram::parse(BORROMEAN).unwrap();
        let l = longitude(&borromean, 3).unwrap();
        assert_eq!(l.word, "g6 g8^-1".parse().unwrap());
        assert_eq!(l.framing_correction, 0);
    }

    #[test]
    fn kink_gets_writhe_correction() {
        let d = LinkDiagram::parse(r#"{"crossings": [[1, 1, 2, 2]]}"#).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_signs(), &[1]);
        assert_eq!(d.self_writhe(1).unwrap(), 1);
        let l = longitude(&d, 1).unwrap();
        assert_eq!(l.word, "g2".parse().unwrap());
        assert_eq!(l.framing_correction, -1);
    }

    #[test]
    fn mirror_flips_signs() {
        let d = LinkDiagram::parse(BORROMEAN).unwrap();
        let m = d.mirror();
        assert_eq!(m.crossing_signs(), &[-1, 1, -1, 1, -1, 1]);
        assert_eq!(m.component_count(), 3);
        assert_eq!(m.arc_count(), 12);
    }

    #[test]
    fn shifted_basepoint_walk_is_consistent() {
        let d = LinkDiagram::parse(BORROMEAN).unwrap();
        let bp = Basepoints::shifted(&d, 3).unwrap();
        let p = wirtinger_with(&d, &bp).unwrap();
        assert_ne!(p.preferred_meridian(3), 9);
        let l = longitude_with(&d, 3, &bp).unwrap();
        assert_eq!(l.word.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let d = LinkDiagram::parse(BORROMEAN).unwrap();
        let text = d.to_json_string();
        let d2 = LinkDiagram::parse(&text).unwrap();
        assert_eq!(d2.component_count(), 3);
        assert_eq!(d2.crossing_signs(), d.crossing_signs());
    }
}
