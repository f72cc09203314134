//! Reidemeister–Schreier rewriting and Tietze simplification.

use std::collections::{BTreeSet, VecDeque};

use num::Integer;

use super::presentation::Presentation;
use super::todd_coxeter::CosetTable;
use super::word::Word;
use super::GroupError;

/// Kernel of the map to `Z_m` sending generator `g` to `images[g]`,
/// simplified.
pub fn reidemeister_schreier(p: &Presentation, images: &[i64], m: u64) -> Result<Presentation, GroupError> {
    let raw = reidemeister_schreier_raw(p, images, m)?;
    Ok(tietze_simplify(&raw))
}

/// Unsimplified kernel presentation on all Schreier generators.
pub fn reidemeister_schreier_raw(p: &Presentation, images: &[i64], m: u64) -> Result<Presentation, GroupError> {
    if images.len() != p.generator_count() || m == 0 {
        return Err(GroupError::BadInput("one image per generator and m ≥ 1 required".into()));
    }
    let mi = m as i64;
    let g = images.iter().fold(mi, |acc, &x| acc.gcd(&x.rem_euclid(mi)));
    if g != 1 && m != 1 {
        return Err(GroupError::NotSurjective);
    }
    let image = |w: &Word| w.letters().map(|(g, e)| e * images[g]).sum::<i64>().rem_euclid(mi);
    if let Some(r) = p.relators.iter().find(|r| image(r) != 0) {
        return Err(GroupError::BadInput(format!("relator {} does not map to 0 mod {m}", p.word_text(r))));
    }
    let perms: Vec<Vec<usize>> = images
        .iter()
        .map(|&x| (0..m as usize).map(|c| (c as i64 + x).rem_euclid(mi) as usize).collect())
        .collect();
    reidemeister_schreier_table_raw(p, &CosetTable::from_permutations(perms))
}

/// Presentation of the subgroup fixing coset 0 of a closed coset table, simplified.
pub fn reidemeister_schreier_table(p: &Presentation, table: &CosetTable) -> Result<Presentation, GroupError> {
    Ok(tietze_simplify(&reidemeister_schreier_table_raw(p, table)?))
}

fn reidemeister_schreier_table_raw(p: &Presentation, table: &CosetTable) -> Result<Presentation, GroupError> {
    let n = table.coset_count;
    let gens = p.generator_count();
    let perms: Vec<Vec<usize>> = (0..gens)
        .map(|g| table.permutation(g).ok_or_else(|| GroupError::BadInput("coset table is not closed".into())))
        .collect::<Result<_, _>>()?;
    let inverse: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let mut q = vec![0; n];
            for (c, &d) in p.iter().enumerate() {
                q[d] = c;
            }
            q
        })
        .collect();
    // Breadth-first Schreier tree; edge (c, g) joins c and c·g.
    let mut tree = BTreeSet::new();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..gens {
            let d = perms[g][c];
            if !seen[d] {
                seen[d] = true;
                tree.insert((c, g));
                queue.push_back(d);
            }
            let e = inverse[g][c];
            if !seen[e] {
                seen[e] = true;
                tree.insert((e, g));
                queue.push_back(e);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GroupError::BadInput("coset action is not transitive".into()));
    }
    let mut index = vec![vec![None; gens]; n];
    let mut names = Vec::new();
    for c in 0..n {
        for g in 0..gens {
            if !tree.contains(&(c, g)) {
                index[c][g] = Some(names.len());
                names.push(format!("{}_{c}", p.generator_names()[g]));
            }
        }
    }
    let mut relators = Vec::new();
    for r in &p.relators {
        for c in 0..n {
            let mut k = c;
            let mut w = Word::identity();
            for (g, e) in r.letters() {
                if e > 0 {
                    if let Some(s) = index[k][g] {
                        w.push(s, 1);
                    }
                    k = perms[g][k];
                } else {
                    k = inverse[g][k];
                    if let Some(s) = index[k][g] {
                        w.push(s, -1);
                    }
                }
            }
            debug_assert_eq!(k, c, "relator must act trivially on cosets");
            relators.push(w);
        }
    }
    Ok(Presentation::new(names, relators))
}

/// Deterministic Tietze pass set: cyclically reduce, drop trivial and
/// duplicate relators, then repeatedly eliminate a generator occurring
/// exactly once in a shortest relator.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    let gens = p.generator_count();
    let mut alive = vec![true; gens];
    let mut rels: Vec<Word> = p.relators.clone();
    loop {
        rels = normalize(&rels);
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by_key(|&i| (rels[i].len(), rels[i].cyclic_key()));
        let pick = order.iter().find_map(|&i| {
            let r = &rels[i];
            let mut cands: Vec<usize> = r.syllables().iter().map(|&(g, _)| g).collect();
            cands.sort_unstable();
            cands.dedup();
            cands.into_iter().find(|&g| r.occurrences(g) == 1).map(|g| (i, g))
        });
        let Some((i, g)) = pick else { break };
        let r = rels.remove(i);
        let value = solve_for(&r, g);
        for w in rels.iter_mut() {
            if w.mentions(g) {
                *w = w.substitute(g, &value);
            }
        }
        alive[g] = false;
    }
    let mut map = vec![None; gens];
    let mut names = Vec::new();
    for g in 0..gens {
        if alive[g] {
            map[g] = Some(names.len());
            names.push(p.generator_names()[g].clone());
        }
    }
    let relators = rels.iter().map(|r| r.renumber(&map)).collect();
    Presentation::new(names, relators)
}

fn normalize(rels: &[Word]) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        let c = r.cyclically_reduced();
        if c.is_identity() {
            continue;
        }
        if seen.insert(c.cyclic_key()) {
            out.push(c);
        }
    }
    out
}

/// For `r = u g^ε v` with `g` absent from `u`, `v`: `g = (u⁻¹ v⁻¹)^ε`... as
/// a word, `g^ε = u⁻¹ v⁻¹`.
fn solve_for(r: &Word, g: usize) -> Word {
    let syl = r.syllables();
    let pos = syl.iter().position(|&(h, _)| h == g).expect("generator occurs");
    let eps = syl[pos].1;
    debug_assert!(eps.abs() == 1);
    let u = Word::from_syllables(syl[..pos].iter().copied());
    let v = Word::from_syllables(syl[pos + 1..].iter().copied());
    let rhs = u.inverse().mul(&v.inverse());
    if eps == 1 {
        rhs
    } else {
        rhs.inverse()
    }
}
