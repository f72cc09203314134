//! Finite presentations and their text format.
//!
//! ```text
//! gens: a b
//! a^2
//! b^3
//! (a b)^3
//! [a, b^-1]
//! ```
//!
//! Factors are generator names, `(word)` or commutators `[u, v] = u v u⁻¹ v⁻¹`,
//! each optionally raised to an integer power. Factors are separated by
//! spaces or `*`. A run of letters that is not a generator name is read as
//! single-letter generators, so `ab^2` is `a b^2`.
//! `1` is the empty word.

use std::fmt;

use super::word::Word;
use super::GroupError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Panics if a relator mentions an undeclared generator.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Self {
        let n = generator_names.len();
        assert!(
            relators.iter().all(|r| r.max_generator().is_none_or(|g| g < n)),
            "relator uses an undeclared generator"
        );
        Presentation { generator_names, relators }
    }

    /// Generators named `prefix0, prefix1, …`.
    pub fn with_count(prefix: &str, count: usize, relators: Vec<Word>) -> Self {
        Self::new((0..count).map(|i| format!("{prefix}{i}")).collect(), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((i + 1, l))
        });
        let (_, first) = lines.next().ok_or_else(|| GroupError::Parse { line: 1, message: "empty input".into() })?;
        let names = first
            .strip_prefix("gens:")
            .ok_or_else(|| GroupError::Parse { line: 1, message: "expected `gens:` line".into() })?;
        let names: Vec<String> = names.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from).collect();
        for n in &names {
            if !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || !n.starts_with(|c: char| c.is_ascii_alphabetic()) {
                return Err(GroupError::Parse { line: 1, message: format!("bad generator name `{n}`") });
            }
        }
        let mut relators = Vec::new();
        for (line, l) in lines {
            let mut p = WordParser { src: l.as_bytes(), pos: 0, names: &names };
            let w = p.word().map_err(|m| GroupError::Parse { line, message: format!("{m} at column {}", p.pos + 1) })?;
            if p.pos != p.src.len() {
                return Err(GroupError::Parse { line, message: format!("unexpected input at column {}", p.pos + 1) });
            }
            relators.push(w);
        }
        Ok(Presentation { generator_names: names, relators })
    }

    /// Relator text for `w` in this presentation's names.
    pub fn word_text(&self, w: &Word) -> String {
        w.display(&self.generator_names).to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generator_names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", self.word_text(r))?;
        }
        Ok(())
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn skip(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] == b' ' || self.src[self.pos] == b'\t' || self.src[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, String> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' {
                break;
            }
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, String> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                w
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Word::commutator(&u, &v)
            }
            Some(b'1') => {
                self.pos += 1;
                Word::identity()
            }
            Some(c) if c.is_ascii_alphabetic() => self.name()?,
            Some(c) => return Err(format!("unexpected `{}`", c as char)),
            None => return Err("unexpected end".into()),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip();
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: i64 = std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii")
                .parse()
                .map_err(|_| "expected integer exponent".to_string())?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{}`", c as char))
        }
    }

    fn name(&mut self) -> Result<Word, String> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let tok = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if let Some(g) = self.names.iter().position(|n| n == tok) {
            return Ok(Word::gen(g));
        }
        // not a name: peel off one single-letter generator and leave the rest
        let first = tok.chars().next().expect("nonempty token");
        let g = self
            .names
            .iter()
            .position(|n| n.len() == 1 && n.starts_with(first))
            .ok_or_else(|| {
                self.pos = start;
                format!("unknown generator `{tok}`")
            })?;
        self.pos = start + 1;
        Ok(Word::gen(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Presentation::parse("gens: a b\na^2\nb^3\n(a b)^3\n[a, b^-1]\n").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators[0], Word::power_of(0, 2));
        assert_eq!(p.relators[2].len(), 6);
        assert_eq!(p.relators[3], Word::commutator(&Word::gen(0), &Word::power_of(1, -1)));
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn letter_runs() {
        let p = Presentation::parse("gens: a b\nab^2 a\nba*b").unwrap();
        assert_eq!(p.relators[0], Word::from_syllables([(0, 1), (1, 2), (0, 1)]));
        assert_eq!(p.relators[1], Word::from_syllables([(1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn multi_letter_names() {
        let p = Presentation::parse("gens: x0 x1\nx0 x1^-1\n1").unwrap();
        assert_eq!(p.relators[0], Word::from_syllables([(0, 1), (1, -1)]));
        assert!(p.relators[1].is_identity());
    }

    #[test]
    fn errors() {
        assert!(Presentation::parse("a^2").is_err());
        assert!(matches!(Presentation::parse("gens: a\nc"), Err(GroupError::Parse { line: 2, .. })));
        assert!(Presentation::parse("gens: a\n(a").is_err());
    }
}
