//! Stratified knowledge bases `Σ = (E, K)`.
//!
//! `K` is a consistent core of certain knowledge. The beliefs `E` are split
//! into strata `Σ1..Σn`; stratum 1 is the most reliable. A belief is
//! addressed by a [`BeliefRef`], which is stable for the lifetime of the KB.
//!
//! Text format:
//!
//! ```text
//! # comment
//! [core]
//! p -> q
//! [stratum 1]
//! a
//! !a
//! [stratum 2]
//! a -> b
//! ```

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{self, parse_formula, Formula, FormulaSet, ParseError};

#[derive(Debug, Error)]
pub enum KbError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("the core is inconsistent")]
    InconsistentCore,
    #[error("`{formula}` appears in stratum {first} and again in stratum {second}")]
    DuplicateBelief { formula: String, first: usize, second: usize },
    #[error("`{formula}` appears twice in the core")]
    DuplicateCore { formula: String },
    #[error("no belief at {0}")]
    DanglingRef(BeliefRef),
}

/// Position of a belief: 1-based stratum index, 0-based position within the stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BeliefRef {
    pub stratum: usize,
    pub position: usize,
}

impl BeliefRef {
    pub fn new(stratum: usize, position: usize) -> Self {
        BeliefRef { stratum, position }
    }
}

impl fmt::Display for BeliefRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}.{}", self.stratum, self.position)
    }
}

/// A validated stratified knowledge base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedKb {
    core: FormulaSet,
    strata: Vec<FormulaSet>,
    refs: Vec<BeliefRef>,
}

impl StratifiedKb {
    /// Builds a KB, checking that the core is consistent and that no formula
    /// occurs in two strata.
    pub fn new(core: FormulaSet, strata: Vec<FormulaSet>) -> Result<Self, KbError> {
        for (i, stratum) in strata.iter().enumerate() {
            for f in stratum {
                if let Some(j) = strata[..i].iter().position(|s| s.contains(f)) {
                    return Err(KbError::DuplicateBelief { formula: f.to_string(), first: j + 1, second: i + 1 });
                }
            }
        }
        if !formula::is_consistent(&core) {
            return Err(KbError::InconsistentCore);
        }
        let refs = strata
            .iter()
            .enumerate()
            .flat_map(|(i, s)| (0..s.len()).map(move |p| BeliefRef::new(i + 1, p)))
            .collect();
        Ok(StratifiedKb { core, strata, refs })
    }

    pub fn core(&self) -> &FormulaSet {
        &self.core
    }

    pub fn strata(&self) -> &[FormulaSet] {
        &self.strata
    }

    pub fn num_strata(&self) -> usize {
        self.strata.len()
    }

    /// Number of beliefs `|E|`.
    pub fn num_beliefs(&self) -> usize {
        self.refs.len()
    }

    /// All belief references, in stratum then position order. The index of a
    /// reference in this slice is its dense belief index.
    pub fn belief_refs(&self) -> &[BeliefRef] {
        &self.refs
    }

    pub fn belief(&self, r: BeliefRef) -> Option<&Formula> {
        self.strata.get(r.stratum.checked_sub(1)?)?.get(r.position)
    }

    /// Dense index of `r` within [`Self::belief_refs`].
    pub fn belief_index(&self, r: BeliefRef) -> Option<usize> {
        self.refs.binary_search(&r).ok()
    }

    /// Iterates `(ref, formula)` pairs over `E`.
    pub fn beliefs(&self) -> impl Iterator<Item = (BeliefRef, &Formula)> + '_ {
        self.refs.iter().map(move |&r| (r, self.strata[r.stratum - 1].get(r.position).expect("refs are dense")))
    }

    /// Finds the reference of a belief by formula.
    pub fn find(&self, f: &Formula) -> Option<BeliefRef> {
        self.strata
            .iter()
            .enumerate()
            .find_map(|(i, s)| s.position(f).map(|p| BeliefRef::new(i + 1, p)))
    }

    /// Certainty level of a set of beliefs: the largest stratum index it
    /// meets. The empty set has level 0, which ranks core-only arguments above
    /// every belief-dependent one.
    pub fn certainty_level<'a>(&self, refs: impl IntoIterator<Item = &'a BeliefRef>) -> Result<usize, KbError> {
        let mut level = 0;
        for &r in refs {
            if self.belief(r).is_none() {
                return Err(KbError::DanglingRef(r));
            }
            level = level.max(r.stratum);
        }
        Ok(level)
    }

    /// The same KB with all beliefs merged into a single stratum.
    pub fn flatten(&self) -> StratifiedKb {
        if self.refs.is_empty() {
            return self.clone();
        }
        let merged: FormulaSet = self.strata.iter().flat_map(|s| s.iter().cloned()).collect();
        StratifiedKb::new(self.core.clone(), vec![merged]).expect("flattening preserves validity")
    }

    pub fn parse(text: &str) -> Result<Self, KbError> {
        parse_kb(text)
    }

    /// Renders the KB in the text format accepted by [`parse_kb`].
    pub fn render(&self) -> String {
        let mut out = String::from("[core]\n");
        for f in &self.core {
            let _ = writeln!(out, "{f}");
        }
        for (i, stratum) in self.strata.iter().enumerate() {
            let _ = writeln!(out, "[stratum {}]", i + 1);
            for f in stratum {
                let _ = writeln!(out, "{f}");
            }
        }
        out
    }
}

enum Section {
    None,
    Core,
    Stratum,
}

fn parse_header(line: &str, lineno: usize) -> Result<Option<HeaderKind>, KbError> {
    let Some(inner) = line.strip_prefix('[') else {
        return Ok(None);
    };
    let inner = inner
        .strip_suffix(']')
        .ok_or_else(|| KbError::Syntax { line: lineno, message: "unterminated section header".into() })?
        .trim();
    if inner == "core" {
        return Ok(Some(HeaderKind::Core));
    }
    let mut words = inner.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("stratum"), Some(n), None) => n
            .parse::<usize>()
            .map(|n| Some(HeaderKind::Stratum(n)))
            .map_err(|_| KbError::Syntax { line: lineno, message: format!("bad stratum number `{n}`") }),
        _ => Err(KbError::Syntax { line: lineno, message: format!("unknown section `[{inner}]`") }),
    }
}

enum HeaderKind {
    Core,
    Stratum(usize),
}

/// Parses and validates a KB from the line-oriented text format.
pub fn parse_kb(text: &str) -> Result<StratifiedKb, KbError> {
    let mut core = FormulaSet::new();
    let mut strata: Vec<FormulaSet> = Vec::new();
    let mut section = Section::None;
    let mut seen_core = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = parse_header(line, lineno)? {
            match header {
                HeaderKind::Core => {
                    if seen_core {
                        return Err(KbError::Syntax { line: lineno, message: "duplicate [core] section".into() });
                    }
                    if !strata.is_empty() {
                        return Err(KbError::Syntax { line: lineno, message: "[core] must precede the strata".into() });
                    }
                    seen_core = true;
                    section = Section::Core;
                }
                HeaderKind::Stratum(n) => {
                    if n != strata.len() + 1 {
                        return Err(KbError::Syntax {
                            line: lineno,
                            message: format!("expected [stratum {}], found [stratum {n}]", strata.len() + 1),
                        });
                    }
                    strata.push(FormulaSet::new());
                    section = Section::Stratum;
                }
            }
            continue;
        }
        let f = parse_formula(line).map_err(|source| KbError::Formula { line: lineno, source })?;
        match section {
            Section::None => {
                return Err(KbError::Syntax { line: lineno, message: "formula outside of any section".into() })
            }
            Section::Core => {
                let text = f.to_string();
                if !core.insert(f) {
                    return Err(KbError::DuplicateCore { formula: text });
                }
            }
            Section::Stratum => {
                let n = strata.len();
                let text = f.to_string();
                if !strata[n - 1].insert(f) {
                    return Err(KbError::DuplicateBelief { formula: text, first: n, second: n });
                }
            }
        }
    }
    StratifiedKb::new(core, strata)
}
