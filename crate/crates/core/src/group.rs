//! Finitely generated Fuchsian groups given by integer generator matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::{MoebiusMatrix, SlMatrix};
use crate::word::{Letter, Word};

pub const GROUP_HEADER: &str = "fuchsian-group v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator label {0:?} must be a single uppercase ASCII letter")]
    BadLabel(char),
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(char),
    #[error("generator {label}: determinant is {det}, expected 1")]
    Determinant { label: char, det: BigInt },
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("group {0:?} is not flagged free; enumeration needs a free group, supply a spectrum file instead")]
    NotFree(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: char,
    pub matrix: SlMatrix,
}

/// A named Fuchsian group with generators sorted by label.
///
/// Generator matrices are kept as SL(2,Z) lifts; the lift fixes the sign of
/// every word's trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuchsianGroupSpec {
    name: String,
    generators: Vec<Generator>,
    free: bool,
}

impl FuchsianGroupSpec {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<(char, SlMatrix)>,
        free: bool,
    ) -> Result<Self, GroupError> {
        let mut gens = Vec::with_capacity(generators.len());
        for (label, matrix) in generators {
            if !label.is_ascii_uppercase() {
                return Err(GroupError::BadLabel(label));
            }
            let det = matrix.determinant();
            if det != BigInt::from(1) {
                return Err(GroupError::Determinant { label, det });
            }
            gens.push(Generator { label, matrix });
        }
        gens.sort_by_key(|g| g.label);
        if let Some(w) = gens.windows(2).find(|w| w[0].label == w[1].label) {
            return Err(GroupError::DuplicateLabel(w[0].label));
        }
        Ok(FuchsianGroupSpec { name: name.into(), generators: gens, free })
    }

    /// Principal congruence subgroup Γ(2), free on `A = [[1,2],[0,1]]`, `B = [[1,0],[2,1]]`.
    pub fn gamma2() -> Self {
        let a = SlMatrix::new(1, 2, 0, 1).expect("det 1");
        let b = SlMatrix::new(1, 0, 2, 1).expect("det 1");
        FuchsianGroupSpec::new("Gamma(2)", vec![('A', a), ('B', b)], true).expect("valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    /// All letters in alphabet order: generators, then their inverses.
    pub fn alphabet(&self) -> Vec<Letter> {
        let upper = self.generators.iter().map(|g| Letter::generator(g.label).expect("ascii"));
        let lower = upper.clone().map(Letter::inverse);
        upper.chain(lower).collect()
    }

    /// SL(2) lift of a single letter.
    pub fn letter_matrix(&self, l: Letter) -> Result<SlMatrix, GroupError> {
        let g = self
            .generators
            .binary_search_by_key(&l.label(), |g| g.label)
            .map(|i| &self.generators[i])
            .map_err(|_| GroupError::UnknownLetter(l.as_char()))?;
        Ok(if l.is_inverse() { g.matrix.inverse() } else { g.matrix.clone() })
    }

    /// Product of the SL(2) lifts along `w`, without sign normalization.
    pub fn word_to_sl(&self, w: &Word) -> Result<SlMatrix, GroupError> {
        w.letters().iter().try_fold(SlMatrix::identity(), |acc, &l| {
            Ok(&acc * &self.letter_matrix(l)?)
        })
    }

    pub fn word_to_matrix(&self, w: &Word) -> Result<MoebiusMatrix, GroupError> {
        self.word_to_sl(w).map(|m| m.to_moebius())
    }

    pub fn to_file_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FuchsianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{GROUP_HEADER}")?;
        writeln!(f, "name {}", self.name)?;
        writeln!(f, "free {}", self.free)?;
        for g in &self.generators {
            let m = &g.matrix;
            writeln!(f, "gen {} {} {} {} {}", g.label, m.a, m.b, m.c, m.d)?;
        }
        Ok(())
    }
}

impl FromStr for FuchsianGroupSpec {
    type Err = GroupError;

    /// Parses the line-oriented group file. Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| GroupError::Parse { line, message };
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        match lines.next() {
            Some((_, GROUP_HEADER)) => {}
            Some((n, other)) => return Err(err(n, format!("expected header {GROUP_HEADER:?}, found {other:?}"))),
            None => return Err(err(1, format!("missing header {GROUP_HEADER:?}"))),
        }

        let mut name = None;
        let mut free = None;
        let mut gens: Vec<(char, SlMatrix)> = Vec::new();
        for (n, line) in lines {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "name" => {
                    if name.replace(rest.to_string()).is_some() {
                        return Err(err(n, "duplicate name line".into()));
                    }
                }
                "free" => {
                    let v = match rest {
                        "true" => true,
                        "false" => false,
                        other => return Err(err(n, format!("free must be true or false, found {other:?}"))),
                    };
                    if free.replace(v).is_some() {
                        return Err(err(n, "duplicate free line".into()));
                    }
                }
                "gen" => {
                    let fields: Vec<&str> = rest.split_whitespace().collect();
                    if fields.len() != 5 {
                        return Err(err(n, format!("gen expects a label and 4 integers, found {} fields", fields.len())));
                    }
                    let mut chars = fields[0].chars();
                    let label = match (chars.next(), chars.next()) {
                        (Some(c), None) if c.is_ascii_uppercase() => c,
                        _ => return Err(err(n, format!("bad generator label {:?}", fields[0]))),
                    };
                    if gens.iter().any(|(l, _)| *l == label) {
                        return Err(err(n, format!("duplicate generator label {label:?}")));
                    }
                    let mut entries = Vec::with_capacity(4);
                    for f in &fields[1..] {
                        entries.push(
                            f.parse::<BigInt>()
                                .map_err(|_| err(n, format!("not an integer: {f:?}")))?,
                        );
                    }
                    let [a, b, c, d]: [BigInt; 4] = entries.try_into().expect("4 entries");
                    let m = SlMatrix::new(a, b, c, d)
                        .map_err(|e| err(n, format!("generator {label}: {e}")))?;
                    gens.push((label, m));
                }
                other => return Err(err(n, format!("unknown directive {other:?}"))),
            }
        }
        let eof = s.lines().count();
        let name = name.ok_or_else(|| err(eof, "missing name line".into()))?;
        let free = free.ok_or_else(|| err(eof, "missing free line".into()))?;
        FuchsianGroupSpec::new(name, gens, free)
    }
}
