use std::fmt;

/// Freely reduced word: syllables `g^e` with `e ≠ 0` and no two adjacent
/// syllables on the same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        Self::from_syllables([(g, e)])
    }

    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(it: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in it {
            w.push(g, e);
        }
        w
    }

    /// Appends `g^e`, keeping the word reduced.
    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().flat_map(|&(g, e)| std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize))
    }

    pub fn mul(&self, o: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &o.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|(h, _)| *h == g).map(|(_, e)| e).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|(g, _)| *g).max()
    }

    pub fn mentions(&self, g: usize) -> bool {
        self.0.iter().any(|(h, _)| *h == g)
    }

    /// Number of syllables on `g` and their total absolute exponent.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|(h, _)| *h == g).map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Conjugate that is cyclically reduced.
    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.0.clone();
        loop {
            if v.len() >= 2 && v[0].0 == v[v.len() - 1].0 {
                let (_, e) = v.pop().expect("nonempty");
                v[0].1 += e;
                if v[0].1 == 0 {
                    v.remove(0);
                }
            } else {
                return Word(v);
            }
        }
    }

    /// Replaces every occurrence of generator `g` by `w`.
    pub fn substitute(&self, g: usize, w: &Word) -> Word {
        let mut out = Word::identity();
        for &(h, e) in &self.0 {
            if h == g {
                out = out.mul(&w.pow(e));
            } else {
                out.push(h, e);
            }
        }
        out
    }

    /// Renames generators through `map`; generators mapped to `None` must not occur.
    pub fn renumber(&self, map: &[Option<usize>]) -> Word {
        Word::from_syllables(self.0.iter().map(|&(g, e)| (map[g].expect("eliminated generator in word"), e)))
    }

    /// Canonical representative of the cyclic word up to rotation and inversion.
    pub fn cyclic_key(&self) -> Vec<(usize, i64)> {
        let c = self.cyclically_reduced();
        let letters: Vec<(usize, i64)> = c.letters().collect();
        let inv: Vec<(usize, i64)> = c.inverse().letters().collect();
        let n = letters.len();
        let mut best: Option<Vec<(usize, i64)>> = None;
        for seq in [&letters, &inv] {
            for r in 0..n.max(1) {
                let rot: Vec<(usize, i64)> = seq[r.min(n)..].iter().chain(&seq[..r.min(n)]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = self.names.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_syllables([(0, 2), (1, 1), (1, -1), (0, -2)]);
        assert!(w.is_identity());
        let a = Word::gen(0);
        let b = Word::gen(1);
        assert_eq!(a.mul(&a.inverse()), Word::identity());
        assert_eq!(Word::commutator(&a, &b).len(), 4);
    }

    #[test]
    fn cyclic_reduction_and_keys() {
        let w = Word::from_syllables([(1, 1), (0, 3), (1, -1)]);
        assert_eq!(w.cyclically_reduced(), Word::power_of(0, 3));
        let ab = Word::from_syllables([(0, 1), (1, 1)]);
        let ba = Word::from_syllables([(1, 1), (0, 1)]);
        assert_eq!(ab.cyclic_key(), ba.cyclic_key());
        assert_eq!(ab.cyclic_key(), ab.inverse().cyclic_key());
    }

    #[test]
    fn substitution() {
        let w = Word::from_syllables([(0, 2), (1, -1)]);
        let s = w.substitute(1, &Word::from_syllables([(0, 1), (2, 1)]));
        assert_eq!(s, Word::from_syllables([(0, 2), (2, -1), (0, -1)]));
    }
}
