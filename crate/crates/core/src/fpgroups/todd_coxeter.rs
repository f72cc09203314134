//! HLT coset enumeration with lookahead.

use std::collections::VecDeque;

use serde::Serialize;

use super::presentation::Presentation;
use super::word::Word;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnumerationStatus {
    Closed,
    CapReached,
}

/// Action of the generators on cosets; coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub coset_count: usize,
    /// `action[g][c]` is `c·g`, always `Some` when the table is closed.
    pub action: Vec<Vec<Option<usize>>>,
    pub status: EnumerationStatus,
}

impl CosetTable {
    pub fn is_closed(&self) -> bool {
        self.status == EnumerationStatus::Closed
    }

    /// Permutation of generator `g`, if total.
    pub fn permutation(&self, g: usize) -> Option<Vec<usize>> {
        self.action[g].iter().copied().collect()
    }

    /// `c·w`, `None` if the walk leaves the defined part.
    pub fn apply(&self, c: usize, w: &Word) -> Option<usize> {
        let mut k = c;
        for (g, e) in w.letters() {
            k = if e > 0 { self.action[g][k]? } else { self.action[g].iter().position(|&d| d == Some(k))? };
        }
        Some(k)
    }

    /// Builds the table of a permutation action given as one permutation per generator.
    pub fn from_permutations(perms: Vec<Vec<usize>>) -> Self {
        let coset_count = perms.first().map_or(1, Vec::len);
        CosetTable {
            coset_count,
            action: perms.into_iter().map(|p| p.into_iter().map(Some).collect()).collect(),
            status: EnumerationStatus::Closed,
        }
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    alive: usize,
    cap: usize,
    queue: VecDeque<usize>,
}

fn inv(x: usize) -> usize {
    x ^ 1
}

/// Column `2g` is `g`, column `2g + 1` is `g⁻¹`.
fn columns(w: &Word) -> Vec<usize> {
    w.letters().map(|(g, e)| if e > 0 { 2 * g } else { 2 * g + 1 }).collect()
}

struct Full;

impl Enumerator {
    fn new(gens: usize, cap: usize) -> Self {
        Enumerator { cols: 2 * gens, table: vec![vec![NONE; 2 * gens]], parent: vec![0], alive: 1, cap, queue: VecDeque::new() }
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            let p = self.parent[c];
            self.parent[c] = self.parent[p];
            c = p;
        }
        c
    }

    fn is_alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, Full> {
        if self.alive >= self.cap {
            return Err(Full);
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.alive += 1;
        self.table[c][x] = d;
        self.table[d][inv(x)] = c;
        Ok(d)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        self.alive -= 1;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                if self.table[f][inv(x)] == e {
                    self.table[f][inv(x)] = NONE;
                }
                let e1 = self.find(e);
                let f1 = self.find(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t);
                } else if self.table[f1][inv(x)] != NONE {
                    let t = self.table[f1][inv(x)];
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][inv(x)] = e1;
                }
            }
        }
    }

    /// Scans `w` from `c`, defining cosets when `fill` holds.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<(), Full> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inv(w[j as usize])] != NONE {
                b = self.table[b][inv(w[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = b;
                self.table[b][inv(x)] = f;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.table.len() {
            if self.is_alive(c) {
                for r in rels {
                    if !self.is_alive(c) {
                        break;
                    }
                    let _ = self.scan(c, r, false);
                }
            }
            c += 1;
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// presented group, stopping once `cap` live cosets would be exceeded.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], cap: usize) -> CosetTable {
    let gens = p.generator_count();
    let rels: Vec<Vec<usize>> = p.relators.iter().map(|r| columns(&r.cyclically_reduced())).filter(|r| !r.is_empty()).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(columns).collect();
    let mut en = Enumerator::new(gens, cap.max(1));
    let mut status = EnumerationStatus::Closed;
    'outer: {
        for s in &subs {
            if en.scan(0, s, true).is_err() {
                status = EnumerationStatus::CapReached;
                break 'outer;
            }
        }
        let mut c = 0;
        while c < en.table.len() {
            let step = |en: &mut Enumerator| -> Result<(), Full> {
                for r in &rels {
                    if !en.is_alive(c) {
                        return Ok(());
                    }
                    en.scan(c, r, true)?;
                }
                for x in 0..en.cols {
                    if !en.is_alive(c) {
                        return Ok(());
                    }
                    if en.table[c][x] == NONE {
                        en.define(c, x)?;
                    }
                }
                Ok(())
            };
            if en.is_alive(c) && step(&mut en).is_err() {
                en.lookahead(&rels);
                if en.is_alive(c) && step(&mut en).is_err() {
                    status = EnumerationStatus::CapReached;
                    break 'outer;
                }
            }
            c += 1;
        }
    }
    compact(&mut en, gens, status)
}

fn compact(en: &mut Enumerator, gens: usize, status: EnumerationStatus) -> CosetTable {
    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.is_alive(c)).collect();
    let mut index = vec![NONE; en.table.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let action = (0..gens)
        .map(|g| {
            live.iter()
                .map(|&c| {
                    let d = en.table[c][2 * g];
                    (d != NONE).then(|| index[en.find(d)])
                })
                .collect()
        })
        .collect();
    CosetTable { coset_count: live.len(), action, status }
}
