//! Primitive hyperbolic conjugacy classes and the length spectrum.
//!
//! In a free group every conjugacy class has a unique cyclically reduced
//! representative up to rotation, and the class is primitive iff that word
//! is not a proper power. The canonical representative of a primitive class
//! is therefore a Lyndon word (strictly smaller than all its proper
//! rotations) that is also cyclically reduced. Enumeration walks the tree of
//! reduced words, pruned to prenecklaces with the Fredricksen–Kessler–Maiorana
//! period rule, and keeps the cyclically reduced Lyndon leaves.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::exec::Execution;
use crate::group::{FuchsianGroupSpec, GroupError};
use crate::matrix::{classify_sl, length_from_trace, ElementKind, MatrixError, SlMatrix};
use crate::word::{cyclic_canonical, primitive_decomposition, Letter, Word};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("word cutoff must be at least 1")]
    ZeroCutoff,
    #[error("word {0} is not conjugate to a nontrivial cyclically reduced word")]
    TrivialClass(String),
    #[error("class {word}: {message}")]
    InvalidClass { word: String, message: String },
    #[error("classes not strictly sorted by (length, word) at {0}")]
    Unsorted(String),
}

/// Character of M = {±I} entering the zeta factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Character {
    #[default]
    Trivial,
    Sign,
}

impl FromStr for Character {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(Character::Trivial),
            "sign" => Ok(Character::Sign),
            other => Err(format!("unknown character {other:?}, expected trivial or sign")),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Character::Trivial => "trivial",
            Character::Sign => "sign",
        })
    }
}

/// Value of the M-character on the elliptic part of a hyperbolic element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn as_f64(self) -> f64 {
        match self {
            Epsilon::Plus => 1.0,
            Epsilon::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Plus => "+1",
            Epsilon::Minus => "-1",
        })
    }
}

impl FromStr for Epsilon {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+1" | "1" => Ok(Epsilon::Plus),
            "-1" => Ok(Epsilon::Minus),
            other => Err(format!("epsilon must be +1 or -1, found {other:?}")),
        }
    }
}

/// `σ(m_γ)` for a hyperbolic SL(2) element: the sign character reads off
/// the sign of the trace, since `tr(g) = tr(m)·2cosh(ℓ/2)` with `m = ±I`.
pub fn epsilon_of(lift: &SlMatrix, sigma: Character) -> Result<Epsilon, MatrixError> {
    let kind = classify_sl(lift);
    if kind != ElementKind::Hyperbolic {
        return Err(MatrixError::NotHyperbolic { trace: lift.trace(), kind });
    }
    Ok(epsilon_from_trace(&lift.trace(), sigma))
}

fn epsilon_from_trace(trace: &BigInt, sigma: Character) -> Epsilon {
    match sigma {
        Character::Sign if trace.is_negative() => Epsilon::Minus,
        _ => Epsilon::Plus,
    }
}

/// One hyperbolic conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicClass {
    pub canonical_word: Word,
    /// Trace of the SL(2) lift (signed).
    pub trace: BigInt,
    pub length: f64,
    pub epsilon: Epsilon,
    pub root: Word,
    pub power: u32,
}

impl GeodesicClass {
    /// Builds the class of an arbitrary word.
    pub fn from_word(g: &FuchsianGroupSpec, w: &Word, sigma: Character) -> Result<Self, SpectrumError> {
        let canonical_word = cyclic_canonical(w);
        if canonical_word.is_empty() {
            return Err(SpectrumError::TrivialClass(w.to_string()));
        }
        let lift = g.word_to_sl(&canonical_word)?;
        let epsilon = epsilon_of(&lift, sigma)?;
        let trace = lift.trace();
        let length = length_from_trace(&trace)?;
        let (root, power) = primitive_decomposition(&canonical_word).expect("nonempty");
        Ok(GeodesicClass { canonical_word, trace, length, epsilon, root, power })
    }

    pub fn is_primitive(&self) -> bool {
        self.power == 1
    }

    /// Internal consistency: hyperbolic trace, length matching the trace,
    /// canonical word, and root/power agreeing with the word.
    pub fn validate(&self, length_tolerance: f64) -> Result<(), SpectrumError> {
        let fail = |message: String| SpectrumError::InvalidClass { word: self.canonical_word.to_string(), message };
        let expected = length_from_trace(&self.trace).map_err(|e| fail(e.to_string()))?;
        if (expected - self.length).abs() > length_tolerance {
            return Err(fail(format!("length {} does not match trace {} (expected {expected})", self.length, self.trace)));
        }
        if cyclic_canonical(&self.canonical_word) != self.canonical_word || self.canonical_word.is_empty() {
            return Err(fail("word is not in canonical cyclic form".into()));
        }
        let (root, power) = primitive_decomposition(&self.canonical_word).expect("nonempty");
        if root != self.root || power != self.power {
            return Err(fail(format!("expected root {root} and power {power}")));
        }
        if self.epsilon == Epsilon::Minus && !self.trace.is_negative() {
            return Err(fail("epsilon -1 requires a negative trace".into()));
        }
        Ok(())
    }

    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.length
            .total_cmp(&other.length)
            .then_with(|| self.canonical_word.cmp(&other.canonical_word))
    }
}

/// Hyperbolic classes sorted by `(length, canonical_word)`, with the word
/// cutoff they were enumerated at.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    group_name: String,
    classes: Vec<GeodesicClass>,
    word_cutoff: usize,
    heuristic_length_cutoff: f64,
}

impl LengthSpectrum {
    /// Validates ordering and uniqueness. Classes themselves are checked by
    /// [`GeodesicClass::validate`] when read from a file.
    pub fn new(
        group_name: impl Into<String>,
        classes: Vec<GeodesicClass>,
        word_cutoff: usize,
        heuristic_length_cutoff: f64,
    ) -> Result<Self, SpectrumError> {
        if let Some(w) = classes.windows(2).find(|w| w[0].sort_cmp(&w[1]) != Ordering::Less) {
            return Err(SpectrumError::Unsorted(w[1].canonical_word.to_string()));
        }
        let mut words: Vec<&Word> = classes.iter().map(|c| &c.canonical_word).collect();
        words.sort();
        if let Some(w) = words.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpectrumError::InvalidClass { word: w[0].to_string(), message: "duplicate class".into() });
        }
        Ok(LengthSpectrum { group_name: group_name.into(), classes, word_cutoff, heuristic_length_cutoff })
    }

    pub fn empty(group_name: impl Into<String>, word_cutoff: usize) -> Self {
        LengthSpectrum { group_name: group_name.into(), classes: Vec::new(), word_cutoff, heuristic_length_cutoff: 0.0 }
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn classes(&self) -> &[GeodesicClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn word_cutoff(&self) -> usize {
        self.word_cutoff
    }

    /// Smallest length among the classes of word length exactly the cutoff.
    /// Classes above this length are increasingly likely to be missing.
    pub fn heuristic_length_cutoff(&self) -> f64 {
        self.heuristic_length_cutoff
    }

    pub fn find(&self, w: &Word) -> Option<&GeodesicClass> {
        self.classes.iter().find(|c| &c.canonical_word == w)
    }

    /// Classes whose canonical word is at most `max_len` letters long.
    pub fn truncated(&self, max_len: usize) -> LengthSpectrum {
        let classes: Vec<GeodesicClass> =
            self.classes.iter().filter(|c| c.canonical_word.len() <= max_len).cloned().collect();
        let heuristic = heuristic_cutoff(&classes, max_len);
        LengthSpectrum { group_name: self.group_name.clone(), classes, word_cutoff: max_len, heuristic_length_cutoff: heuristic }
    }
}

fn heuristic_cutoff(classes: &[GeodesicClass], word_cutoff: usize) -> f64 {
    classes
        .iter()
        .filter(|c| c.canonical_word.len() == word_cutoff)
        .map(|c| c.length)
        .fold(None, |acc: Option<f64>, l| Some(acc.map_or(l, |a| a.min(l))))
        .unwrap_or(0.0)
}

/// Primitive canonical words that were not hyperbolic, by kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub visited: u64,
    pub parabolic: u64,
    pub elliptic: u64,
    pub identity: u64,
}

impl EnumerationStats {
    fn merge(mut self, other: &EnumerationStats) -> Self {
        self.visited += other.visited;
        self.parabolic += other.parabolic;
        self.elliptic += other.elliptic;
        self.identity += other.identity;
        self
    }

    /// Elliptic or trivial primitive words cannot occur in a free torsion-free group.
    pub fn has_validation_warning(&self) -> bool {
        self.elliptic > 0 || self.identity > 0
    }
}

/// A node of the search tree: a reduced prenecklace with its prefix product.
#[derive(Clone)]
struct Node {
    letters: Vec<Letter>,
    /// Length of the longest Lyndon prefix (FKM period).
    period: usize,
    product: SlMatrix,
}

struct Walker<'a> {
    alphabet: &'a [(Letter, SlMatrix)],
    max_len: usize,
    sigma: Character,
    classes: Vec<GeodesicClass>,
    stats: EnumerationStats,
}

impl Walker<'_> {
    fn emit(&mut self, node: &Node) {
        let n = node.letters.len();
        let wraps = n > 1 && node.letters[0].inverse() == node.letters[n - 1];
        if node.period != n || wraps {
            return;
        }
        debug_assert!(crate::word::is_primitive_canonical(&node.letters));
        self.stats.visited += 1;
        match classify_sl(&node.product) {
            ElementKind::Hyperbolic => {
                let trace = node.product.trace();
                let length = length_from_trace(&trace).expect("hyperbolic");
                let word = Word::new(node.letters.clone());
                self.classes.push(GeodesicClass {
                    canonical_word: word.clone(),
                    epsilon: epsilon_from_trace(&trace, self.sigma),
                    trace,
                    length,
                    root: word,
                    power: 1,
                });
            }
            ElementKind::Parabolic => self.stats.parabolic += 1,
            ElementKind::Elliptic => self.stats.elliptic += 1,
            ElementKind::Identity => self.stats.identity += 1,
        }
    }

    /// Children of `node`: reduced extensions that remain prenecklaces.
    fn children<'n>(&'n self, node: &'n Node) -> impl Iterator<Item = Node> + 'n {
        let n = node.letters.len();
        let last = *node.letters.last().expect("nonempty");
        let anchor = node.letters[n - node.period];
        self.alphabet
            .iter()
            .filter(move |(l, _)| *l >= anchor && *l != last.inverse())
            .map(move |(l, m)| {
                let mut letters = node.letters.clone();
                letters.push(*l);
                let period = if *l == anchor { node.period } else { n + 1 };
                Node { letters, period, product: &node.product * m }
            })
    }

    fn walk(&mut self, node: Node) {
        self.emit(&node);
        if node.letters.len() >= self.max_len {
            return;
        }
        let kids: Vec<Node> = self.children(&node).collect();
        for child in kids {
            self.walk(child);
        }
    }
}

/// Enumerates all primitive hyperbolic classes with cyclically reduced word
/// length at most `max_word_len`.
pub fn enumerate_spectrum(
    g: &FuchsianGroupSpec,
    max_word_len: usize,
    sigma: Character,
) -> Result<LengthSpectrum, SpectrumError> {
    enumerate_with_stats(g, max_word_len, sigma, Execution::default()).map(|(sp, _)| sp)
}

pub fn enumerate_with_stats(
    g: &FuchsianGroupSpec,
    max_word_len: usize,
    sigma: Character,
    exec: Execution,
) -> Result<(LengthSpectrum, EnumerationStats), SpectrumError> {
    if !g.is_free() {
        return Err(GroupError::NotFree(g.name().to_string()).into());
    }
    if max_word_len == 0 {
        return Err(SpectrumError::ZeroCutoff);
    }
    let alphabet: Vec<(Letter, SlMatrix)> = g
        .alphabet()
        .into_iter()
        .map(|l| g.letter_matrix(l).map(|m| (l, m)))
        .collect::<Result<_, _>>()?;

    // Depth-one nodes are handled here; their depth-two children become the
    // independent subtrees for the executor.
    let mut top = Walker { alphabet: &alphabet, max_len: max_word_len, sigma, classes: Vec::new(), stats: Default::default() };
    let mut subtrees = Vec::new();
    for (l, m) in &alphabet {
        let node = Node { letters: vec![*l], period: 1, product: m.clone() };
        top.emit(&node);
        if max_word_len > 1 {
            subtrees.extend(top.children(&node));
        }
    }

    let parts = exec.map(&subtrees, |root| {
        let mut w = Walker { alphabet: &alphabet, max_len: max_word_len, sigma, classes: Vec::new(), stats: Default::default() };
        w.walk(root.clone());
        (w.classes, w.stats)
    });

    let mut classes = top.classes;
    let mut stats = top.stats;
    for (cs, st) in parts {
        classes.extend(cs);
        stats = stats.merge(&st);
    }
    classes.sort_by(GeodesicClass::sort_cmp);
    let heuristic = heuristic_cutoff(&classes, max_word_len);
    let sp = LengthSpectrum::new(g.name(), classes, max_word_len, heuristic)?;
    Ok((sp, stats))
}
