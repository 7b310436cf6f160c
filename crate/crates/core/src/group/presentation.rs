use serde::{Deserialize, Serialize};

use super::word::{free_reduce, Word};
use super::GroupError;

/// A finite presentation: generator names plus relator words.
///
/// Relators are stored freely reduced; empty relators are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationFile", into = "PresentationFile")]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

/// On-disk form: `{"generators": ["a","b"], "relators": [[1,2,-1,-2]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (i, name) in generator_names.iter().enumerate() {
            if generator_names[..i].contains(name) {
                return Err(GroupError::DuplicateGenerator(name.clone()));
            }
        }
        let n = generator_names.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for r in &relators {
            r.check_range(n)?;
            let r = free_reduce(r);
            if !r.is_empty() {
                reduced.push(r);
            }
        }
        Ok(Presentation { generator_names, relators: reduced })
    }

    /// Presentation with default names `a, b, c, …` (then `x27, x28, …`).
    pub fn with_default_names(generators: usize, relators: Vec<Word>) -> Result<Self, GroupError> {
        Self::new(default_names(generators), relators)
    }

    pub fn free(generators: usize) -> Self {
        Self::with_default_names(generators, Vec::new()).expect("no relators")
    }

    /// ℤ^n with all pairwise commutators.
    pub fn free_abelian(generators: usize) -> Self {
        let mut rels = Vec::new();
        for i in 1..=generators as u32 {
            for j in (i + 1)..=generators as u32 {
                rels.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
            }
        }
        Self::with_default_names(generators, rels).expect("valid commutators")
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        w.check_range(self.generator_count())
    }

    /// Generator index (1-based) of a name.
    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.generator_names.iter().position(|n| n == name).map(|i| i as u32 + 1)
    }

    /// Parse `1,-2`, `a b^-1`, `ab` (single-letter names run together) or `e`.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        let text = text.trim();
        if text.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '-' || c.is_whitespace()) {
            let w = Word::parse(text)?;
            self.check_word(&w)?;
            return Ok(w);
        }
        if text == "e" {
            return Ok(Word::identity());
        }
        let unknown = |t: &str| GroupError::Parse(format!("unknown generator {t:?} in word {text:?}"));
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    (b, e.parse::<i64>().map_err(|_| GroupError::Parse(format!("bad exponent in {token:?}")))?)
                }
                None => (token, 1),
            };
            let names: Vec<u32> = match self.index_of(base) {
                Some(g) => vec![g],
                None if exp == 1 => base
                    .chars()
                    .map(|c| self.index_of(&c.to_string()).ok_or_else(|| unknown(base)))
                    .collect::<Result<_, _>>()?,
                None => return Err(unknown(base)),
            };
            for g in names {
                letters.extend(Word::generator(g).pow(exp).letters().iter().copied());
            }
        }
        Word::new(letters)
    }

    /// Human-readable rendering such as `a b^-1`.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            let name = self
                .generator_names
                .get(l.unsigned_abs() as usize - 1)
                .cloned()
                .unwrap_or_else(|| format!("g{}", l.unsigned_abs()));
            let exp = run as i64 * l.signum() as i64;
            if exp == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join(" ")
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{}", i + 1) }).collect()
}

impl TryFrom<PresentationFile> for Presentation {
    type Error = GroupError;

    fn try_from(f: PresentationFile) -> Result<Self, Self::Error> {
        Presentation::new(f.generators, f.relators)
    }
}

impl From<Presentation> for PresentationFile {
    fn from(p: Presentation) -> Self {
        PresentationFile { generators: p.generator_names, relators: p.relators }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relators_are_reduced_and_checked() {
        let p = Presentation::with_default_names(
            2,
            vec![Word::new(vec![1, 2, -2]).unwrap(), Word::new(vec![1, -1]).unwrap()],
        )
        .unwrap();
        assert_eq!(p.relators(), &[Word::new(vec![1]).unwrap()]);
        assert!(Presentation::with_default_names(1, vec![Word::new(vec![2]).unwrap()]).is_err());
    }

    #[test]
    fn parse_named_words() {
        let p = Presentation::free(3);
        let w = |v: &[i32]| Word::new(v.to_vec()).unwrap();
        assert_eq!(p.parse_word("a b^-2").unwrap(), w(&[1, -2, -2]));
        assert_eq!(p.parse_word("ab").unwrap(), w(&[1, 2]));
        assert_eq!(p.parse_word("1,-3").unwrap(), w(&[1, -3]));
        assert_eq!(p.parse_word("e").unwrap(), Word::identity());
        assert!(p.parse_word("d").is_err());
        assert!(p.parse_word("4").is_err());
        assert!(p.parse_word("ab^2").is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Presentation::new(vec!["a".into(), "a".into()], vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"generators": ["a","b"], "relators": [[1,2,-1,-2]]}"#;
        let p: Presentation = serde_json::from_str(text).unwrap();
        assert_eq!(p.generator_count(), 2);
        let back: Presentation = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Presentation>(r#"{"generators":["a"],"relators":[[0]]}"#).is_err());
    }

    #[test]
    fn render_groups_powers() {
        let p = Presentation::free(2);
        assert_eq!(p.render(&Word::new(vec![1, 1, -2]).unwrap()), "a^2 b^-1");
    }
}
