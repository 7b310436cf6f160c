use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A word in the free group on generators `1..=n`.
///
/// Letter `+i` is generator `i`, letter `-i` its inverse. The zero letter is
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Result<Self, GroupError> {
        if letters.contains(&0) {
            return Err(GroupError::ZeroLetter);
        }
        Ok(Word(letters))
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// The one-letter word for generator `index` (1-based).
    pub fn generator(index: u32) -> Self {
        assert!(index > 0, "generator indices are 1-based");
        Word(vec![index as i32])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index referenced, 0 for the empty word.
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self * middle * self^-1`, unreduced.
    pub fn conjugate(&self, middle: &Word) -> Word {
        self.concat(middle).concat(&self.inverse())
    }

    /// `u v u^-1 v^-1`, unreduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        Word(letters)
    }

    /// Substitute `images[i-1]` for generator `i` (and its inverse for `-i`).
    pub fn substitute(&self, images: &[Word]) -> Result<Word, GroupError> {
        let mut out = Vec::new();
        for &l in &self.0 {
            let idx = l.unsigned_abs() as usize;
            let image =
                images.get(idx - 1).ok_or(GroupError::LetterOutOfRange { letter: l, generators: images.len() })?;
            if l > 0 {
                out.extend_from_slice(&image.0);
            } else {
                out.extend(image.0.iter().rev().map(|x| -x));
            }
        }
        Ok(Word(out))
    }

    pub fn check_range(&self, generators: usize) -> Result<(), GroupError> {
        match self.0.iter().find(|l| l.unsigned_abs() as usize > generators) {
            Some(&letter) => Err(GroupError::LetterOutOfRange { letter, generators }),
            None => Ok(()),
        }
    }

    /// Parse the CLI form: comma-separated signed integers, `e` or empty for the identity.
    pub fn parse(text: &str) -> Result<Word, GroupError> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Word::identity());
        }
        let letters = text
            .split(',')
            .map(|t| {
                t.trim().parse::<i32>().map_err(|_| GroupError::Parse(format!("bad letter {t:?} in word {text:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

impl TryFrom<Vec<i32>> for Word {
    type Error = GroupError;

    fn try_from(letters: Vec<i32>) -> Result<Self, Self::Error> {
        Word::new(letters)
    }
}

impl From<Word> for Vec<i32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Cancel adjacent inverse pairs until none remain.
///
/// Single left-to-right pass with a stack; the result is the unique freely
/// reduced representative.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<i32> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if stack.last() == Some(&-l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    /// Repeatedly delete the first adjacent inverse pair.
    fn reduce_by_rescanning(v: &[i32]) -> Vec<i32> {
        let mut cur = v.to_vec();
        loop {
            let pos = cur.windows(2).position(|p| p[0] == -p[1]);
            match pos {
                Some(i) => {
                    cur.drain(i..i + 2);
                }
                None => return cur,
            }
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(free_reduce(&w(&[1, -1])), Word::identity());
        assert_eq!(free_reduce(&w(&[1, 2, -2, 1])), w(&[1, 1]));
        assert_eq!(reduce_by_rescanning(&[2, -1, 1, -2, 3]), vec![3]);
        assert_eq!(free_reduce(&w(&[2, -1, 1, -2, 3])), w(&[3]));
    }

    #[test]
    fn zero_letter_rejected() {
        assert!(Word::new(vec![1, 0]).is_err());
        assert!(Word::parse("1,0").is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Word::parse("1, -2,3").unwrap(), w(&[1, -2, 3]));
        assert_eq!(Word::parse("e").unwrap(), Word::identity());
        assert_eq!(w(&[1, -2]).to_string(), "1,-2");
    }

    #[test]
    fn substitute_inverts_images() {
        let images = vec![w(&[1, 2]), w(&[3])];
        assert_eq!(w(&[1, -2, -1]).substitute(&images).unwrap(), w(&[1, 2, -3, -2, -1]));
        assert!(w(&[3]).substitute(&images).is_err());
    }

    fn word_strategy() -> impl Strategy<Value = Vec<i32>> {
        prop::collection::vec(prop_oneof![1i32..=3, -3i32..=-1], 0..24)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shrinks(v in word_strategy()) {
            let word = Word::new(v.clone()).unwrap();
            let r = free_reduce(&word);
            prop_assert_eq!(free_reduce(&r), r.clone());
            prop_assert!(r.len() <= word.len());
            prop_assert_eq!(r.letters(), &reduce_by_rescanning(&v)[..]);
        }

        #[test]
        fn word_times_inverse_is_trivial(v in word_strategy()) {
            let word = Word::new(v).unwrap();
            prop_assert!(free_reduce(&word.concat(&word.inverse())).is_empty());
        }
    }
}
