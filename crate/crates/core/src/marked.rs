//! Marked Kleinian groups: named generators, relation words, and the
//! horocyclic coordinates they were built from.

use crate::error::Error;
use crate::moebius::{Cplx, ExtComplex, MoebiusMap};
use crate::triangle::Signature;
use crate::Result;
use std::collections::BTreeMap;

/// A word in named generators: a sequence of (name, nonzero exponent)
/// syllables. Words act as function composition, leftmost syllable
/// outermost, matching matrix products read left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<(String, i64)>);

impl Word {
    pub fn new(syllables: Vec<(&str, i64)>) -> Self {
        Word(
            syllables
                .into_iter()
                .filter(|(_, e)| *e != 0)
                .map(|(n, e)| (n.to_string(), e))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|(n, e)| (n.clone(), -e))
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syl = self.0.clone();
        for (n, e) in &other.0 {
            if let Some(last) = syl.last_mut() {
                if last.0 == *n {
                    last.1 += e;
                    if last.1 == 0 {
                        syl.pop();
                    }
                    continue;
                }
            }
            syl.push((n.clone(), *e));
        }
        Word(syl)
    }

    pub fn pow(name: &str, e: i64) -> Word {
        Word::new(vec![(name, e)])
    }

    /// The word `(s₁ s₂ … sₖ)^times`, written out syllable by syllable.
    pub fn repeated(syllables: &[(&str, i64)], times: usize) -> Word {
        Word(
            std::iter::repeat_n(syllables, times)
                .flatten()
                .map(|(n, e)| (n.to_string(), *e))
                .collect(),
        )
    }

    /// Evaluates the word over a generator table.
    pub fn evaluate(&self, table: &BTreeMap<String, MoebiusMap>) -> Result<MoebiusMap> {
        let mut acc = MoebiusMap::identity();
        for (name, exp) in &self.0 {
            let g = table
                .get(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            acc = acc.compose(&g.pow(*exp));
        }
        Ok(acc)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (n, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if *e == 1 {
                write!(f, "{}", n)?;
            } else {
                write!(f, "{}^{}", n, e)?;
            }
        }
        Ok(())
    }
}

/// A marked terminal-regular-b-group (or triangle-group block): generator
/// list with names, relation words expected to evaluate to the identity,
/// accidental-parabolic markers, and the horocyclic coordinates.
#[derive(Debug, Clone)]
pub struct MarkedBGroup {
    pub signature: Signature,
    pub generators: Vec<(String, MoebiusMap)>,
    pub relations: Vec<Word>,
    pub accidental_parabolics: Vec<String>,
    pub coordinates: Vec<Cplx>,
    pub partition_label: String,
    pub warnings: Vec<String>,
    /// Construction anchor points (for cross-ratio coordinate recovery).
    pub anchors: Vec<(String, ExtComplex)>,
}

impl MarkedBGroup {
    pub fn generator(&self, name: &str) -> Option<&MoebiusMap> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    pub fn generator_table(&self) -> BTreeMap<String, MoebiusMap> {
        self.generators
            .iter()
            .map(|(n, m)| (n.clone(), *m))
            .collect()
    }

    pub fn anchor(&self, name: &str) -> Option<ExtComplex> {
        self.anchors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| *p)
    }

    /// Conjugates every generator and anchor by `t`. Coordinates and
    /// relations are untouched: they are marking data.
    pub fn conjugated_by(&self, t: &MoebiusMap) -> MarkedBGroup {
        MarkedBGroup {
            signature: self.signature.clone(),
            generators: self
                .generators
                .iter()
                .map(|(n, m)| (n.clone(), m.conjugate_by(t)))
                .collect(),
            relations: self.relations.clone(),
            accidental_parabolics: self.accidental_parabolics.clone(),
            coordinates: self.coordinates.clone(),
            partition_label: self.partition_label.clone(),
            warnings: self.warnings.clone(),
            anchors: self
                .anchors
                .iter()
                .map(|(n, p)| (n.clone(), t.apply(*p)))
                .collect(),
        }
    }
}
