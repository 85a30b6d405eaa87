//! Words in a free group on labelled generators.
//!
//! A generator is an uppercase ASCII letter; its inverse is the matching
//! lowercase letter. Letters compare by their ASCII code, which gives the
//! alphabet order `A < B < ... < Z < a < b < ... < z` used for canonical
//! cyclic words.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid letter {0:?}: letters must be ASCII alphabetic")]
    InvalidLetter(char),
    #[error("empty word has no primitive decomposition")]
    Empty,
}

/// A generator (uppercase) or generator inverse (lowercase).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(c: char) -> Result<Self, WordError> {
        if c.is_ascii_alphabetic() {
            Ok(Letter(c as u8))
        } else {
            Err(WordError::InvalidLetter(c))
        }
    }

    /// The generator letter `label` (uppercase) itself.
    pub fn generator(label: char) -> Result<Self, WordError> {
        Self::new(label.to_ascii_uppercase())
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 0x20)
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0.is_ascii_lowercase()
    }

    /// Uppercase label of the underlying generator.
    #[inline]
    pub fn label(self) -> char {
        self.0.to_ascii_uppercase() as char
    }

    #[inline]
    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite sequence of letters, not necessarily reduced.
///
/// Ordering is lexicographic on the letter sequence; a proper prefix sorts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// No adjacent pair `x x⁻¹`.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0].inverse() != p[1])
    }

    /// Reduced, and the first letter does not cancel against the last.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&first), Some(&last)) if self.letters.len() > 1 => first.inverse() != last,
                _ => true,
            }
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word::new(self.letters.repeat(n))
    }

    /// Rotation starting at position `i`.
    pub fn rotate(&self, i: usize) -> Word {
        if self.letters.is_empty() {
            return Word::empty();
        }
        let i = i % self.letters.len();
        let mut letters = self.letters[i..].to_vec();
        letters.extend_from_slice(&self.letters[..i]);
        Word::new(letters)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::new(letters)
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses `"A B b a"` or `"ABba"`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(Letter::new)
            .collect::<Result<Vec<_>, _>>()
            .map(Word::new)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word::new(stack)
}

/// Free reduction followed by stripping cancelling end letters.
pub fn cyclic_reduce(w: &Word) -> Word {
    let reduced = free_reduce(w);
    let letters = reduced.letters();
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo].inverse() == letters[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    Word::new(letters[lo..hi].to_vec())
}

/// Index of the lexicographically least rotation (Booth's algorithm).
///
/// When several rotations tie (periodic input) the smallest index is returned.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut failure = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = failure[j - k - 1];
        while i != usize::MAX && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = failure[i];
        }
        if i == usize::MAX && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            failure[j - k] = usize::MAX;
        } else {
            failure[j - k] = i.wrapping_add(1);
        }
    }
    k
}

/// Canonical representative of the conjugacy class of `w`: the least
/// rotation of its cyclic reduction. Two words are conjugate in the free
/// group iff their canonical forms are equal.
pub fn cyclic_canonical(w: &Word) -> Word {
    let cr = cyclic_reduce(w);
    let k = least_rotation(cr.letters());
    cr.rotate(k)
}

/// Smallest rotation period of a cyclic word (the length of its primitive root).
pub fn cyclic_period<T: Eq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    // KMP prefix function; the smallest period p of the linear word divides n
    // exactly when the word is a proper power.
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Writes a cyclically reduced word as `root^n` with `root` primitive.
pub fn primitive_decomposition(w: &Word) -> Result<(Word, u32), WordError> {
    if w.is_empty() {
        return Err(WordError::Empty);
    }
    let p = cyclic_period(w.letters());
    let root = Word::new(w.letters()[..p].to_vec());
    Ok((root, (w.len() / p) as u32))
}

/// True when `w` is cyclically reduced, equal to its least rotation and not
/// a proper power; these are exactly the canonical words of primitive classes.
pub fn is_primitive_canonical(w: &[Letter]) -> bool {
    !w.is_empty()
        && Word::new(w.to_vec()).is_cyclically_reduced()
        && least_rotation(w) == 0
        && cyclic_period(w) == w.len()
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
        assert_eq!(free_reduce(&w("A a")), Word::empty());
        assert_eq!(free_reduce(&w("A B b a")), Word::empty());
        assert_eq!(free_reduce(&w("A B A")), w("A B A"));
    }

    #[test]
    fn cyclic_canonical_examples() {
        assert_eq!(cyclic_canonical(&w("B A")), w("A B"));
        assert_eq!(cyclic_canonical(&w("a A B")), w("B"));
        assert_eq!(cyclic_canonical(&w("B A B A")), w("A B A B"));
        assert_eq!(cyclic_canonical(&w("b A B a")), w("A B a b"));
        assert_eq!(cyclic_canonical(&w("b A a B")), Word::empty());
    }

    #[test]
    fn primitive_decomposition_examples() {
        assert_eq!(primitive_decomposition(&w("A B")).unwrap(), (w("A B"), 1));
        assert_eq!(primitive_decomposition(&w("A B A B")).unwrap(), (w("A B"), 2));
        assert_eq!(
            primitive_decomposition(&w("A A B A A B A A B")).unwrap(),
            (w("A A B"), 3)
        );
        assert_eq!(primitive_decomposition(&Word::empty()), Err(WordError::Empty));
        // period of the linear word does not divide the length
        assert_eq!(primitive_decomposition(&w("A B A")).unwrap(), (w("A B A"), 1));
    }

    #[test]
    fn alphabet_order() {
        let mut letters: Vec<Letter> = "baBA".chars().map(|c| Letter::new(c).unwrap()).collect();
        letters.sort();
        let s: String = letters.iter().map(|l| l.as_char()).collect();
        assert_eq!(s, "ABab");
        assert!(Letter::new('1').is_err());
    }

    fn naive_least_rotation(s: &[u8]) -> usize {
        (0..s.len())
            .min_by(|&i, &j| {
                let ri: Vec<_> = s[i..].iter().chain(&s[..i]).collect();
                let rj: Vec<_> = s[j..].iter().chain(&s[..j]).collect();
                ri.cmp(&rj).then(i.cmp(&j))
            })
            .unwrap_or(0)
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop::sample::select(vec!['A', 'B', 'C', 'a', 'b', 'c']), 0..max_len)
            .prop_map(|cs| Word::new(cs.into_iter().map(|c| Letter::new(c).unwrap()).collect()))
    }

    proptest! {
        #[test]
        fn booth_matches_naive(s in proptest::collection::vec(0u8..3, 0..20)) {
            prop_assert_eq!(least_rotation(&s), naive_least_rotation(&s));
        }

        #[test]
        fn canonical_idempotent_and_rotation_invariant(word in arb_word(16), r in 0usize..16) {
            let c = cyclic_canonical(&word);
            prop_assert_eq!(cyclic_canonical(&c), c.clone());
            prop_assert!(c.is_cyclically_reduced());
            let cr = cyclic_reduce(&word);
            prop_assert_eq!(cyclic_canonical(&cr.rotate(r)), c);
        }

        #[test]
        fn canonical_invariant_under_conjugation(word in arb_word(10), u in arb_word(6)) {
            let conj = u.concat(&word).concat(&u.inverse());
            prop_assert_eq!(cyclic_canonical(&conj), cyclic_canonical(&word));
        }

        #[test]
        fn reduce_is_reduced(word in arb_word(24)) {
            prop_assert!(free_reduce(&word).is_reduced());
        }

        #[test]
        fn decomposition_recomposes(word in arb_word(8), n in 1usize..4) {
            let c = cyclic_canonical(&word);
            prop_assume!(!c.is_empty());
            let (root, m) = primitive_decomposition(&c).unwrap();
            prop_assert_eq!(root.pow(m as usize), c.clone());
            let (_, big) = primitive_decomposition(&c.pow(n)).unwrap();
            prop_assert_eq!(big as usize, m as usize * n);
        }
    }
}
