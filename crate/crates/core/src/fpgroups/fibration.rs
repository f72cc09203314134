//! Surface groups with punctures and fibration presentations.

use super::presentation::Presentation;
use super::word::Word;
use super::GroupError;

/// Fiber generators `a_1..a_g, b_1..b_g, x_0..x_{s-1}` in this order.
fn fiber_names(g: usize, s: usize) -> Vec<String> {
    (1..=g)
        .map(|i| format!("a{i}"))
        .chain((1..=g).map(|i| format!("b{i}")))
        .chain((0..s).map(|j| format!("x{j}")))
        .collect()
}

/// `Π[a_i,b_i] · (Π x_j)⁻¹`.
fn surface_relator(g: usize, s: usize) -> Word {
    let mut w = Word::identity();
    for i in 0..g {
        w = w.mul(&Word::commutator(&Word::gen(i), &Word::gen(g + i)));
    }
    let mut xs = Word::identity();
    for j in 0..s {
        xs.push(2 * g + j, 1);
    }
    w.mul(&xs.inverse())
}

/// Fundamental group of a genus `g` surface with `s` punctures.
pub fn omega_presentation(g: usize, s: usize) -> Presentation {
    Presentation::new(fiber_names(g, s), vec![surface_relator(g, s)])
}

/// Action of the base loops `γ_k` on the fiber group, as words in the fiber
/// generators. Indexing is `[k][i]` for `alpha`, `beta` and `[k][j]` for `delta`.
/// An empty table is the trivial monodromy.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Monodromy {
    pub alpha: Vec<Vec<Word>>,
    pub beta: Vec<Vec<Word>>,
    pub delta: Vec<Vec<Word>>,
}

impl Monodromy {
    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty() && self.delta.is_empty()
    }
}

/// Fiber generators followed by `γ_1..γ_r`, with relators
/// `[γ_k,a_i] α⁻¹`, `[γ_k,b_i] β⁻¹`, `[γ_k δ_{j,k}, x_j]` and the surface relation.
pub fn fibration_presentation(fiber: (usize, usize), r: usize, monodromy: &Monodromy) -> Result<Presentation, GroupError> {
    let (g, s) = fiber;
    let nf = 2 * g + s;
    let check = |name: &str, table: &Vec<Vec<Word>>, width: usize| -> Result<(), GroupError> {
        if table.is_empty() {
            return Ok(());
        }
        if table.len() != r || table.iter().any(|row| row.len() != width) {
            return Err(GroupError::DimensionMismatch(format!("{name} must be {r} x {width}")));
        }
        if table.iter().flatten().any(|w| w.max_generator().is_some_and(|h| h >= nf)) {
            return Err(GroupError::MonodromyUsesBaseGenerators);
        }
        Ok(())
    };
    check("alpha", &monodromy.alpha, g)?;
    check("beta", &monodromy.beta, g)?;
    check("delta", &monodromy.delta, s)?;
    let entry = |table: &Vec<Vec<Word>>, k: usize, i: usize| table.get(k).map(|row| row[i].clone()).unwrap_or_default();
    let mut names = fiber_names(g, s);
    names.extend((1..=r).map(|k| format!("gamma{k}")));
    let mut rels = Vec::new();
    for k in 0..r {
        let gk = Word::gen(nf + k);
        for i in 0..g {
            rels.push(Word::commutator(&gk, &Word::gen(i)).mul(&entry(&monodromy.alpha, k, i).inverse()));
            rels.push(Word::commutator(&gk, &Word::gen(g + i)).mul(&entry(&monodromy.beta, k, i).inverse()));
        }
        for j in 0..s {
            rels.push(Word::commutator(&gk.mul(&entry(&monodromy.delta, k, j)), &Word::gen(2 * g + j)));
        }
    }
    rels.push(surface_relator(g, s));
    Ok(Presentation::new(names, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroups::{abelianize, tietze_simplify, AbelianInvariants};

    #[test]
    fn punctured_surfaces() {
        let t = tietze_simplify(&omega_presentation(0, 1));
        assert_eq!(t.generator_count(), 0);
        assert_eq!(abelianize(&omega_presentation(0, 2)), AbelianInvariants::new(1, vec![]));
        assert_eq!(abelianize(&omega_presentation(1, 0)), AbelianInvariants::new(2, vec![]));
        let f = tietze_simplify(&omega_presentation(2, 3));
        assert_eq!((f.generator_count(), f.relators.len()), (6, 0));
    }

    #[test]
    fn trivial_monodromy() {
        let m = Monodromy::default();
        let p = tietze_simplify(&fibration_presentation((0, 1), 3, &m).unwrap());
        assert_eq!((p.generator_count(), p.relators.len()), (3, 0));
        assert_eq!(abelianize(&fibration_presentation((1, 1), 1, &m).unwrap()), AbelianInvariants::new(3, vec![]));
        assert_eq!(abelianize(&fibration_presentation((0, 2), 1, &m).unwrap()), AbelianInvariants::new(2, vec![]));
    }

    #[test]
    fn table_checks() {
        let bad = Monodromy { delta: vec![vec![Word::identity()]], ..Default::default() };
        assert!(matches!(fibration_presentation((0, 2), 1, &bad), Err(GroupError::DimensionMismatch(_))));
        let base = Monodromy { delta: vec![vec![Word::gen(1)]], ..Default::default() };
        assert_eq!(fibration_presentation((0, 1), 1, &base).unwrap_err(), GroupError::MonodromyUsesBaseGenerators);
    }
}
