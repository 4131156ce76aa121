//! Backtracking search for large S2-sets.
//!
//! Sets are grown in increasing index order with 0 pinned. Equivalent sets under
//! translations and componentwise unit multipliers are rejected by requiring every
//! difference to have a multiplier orbit whose least element is at least the second member.

use alloc::vec;
use alloc::vec::Vec;

use super::{AbelianGroup, S2Set};
use crate::error::{Error, Result};
use crate::groups::gcd;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Largest group order the search accepts.
pub const SEARCH_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub set: S2Set,
    /// The search tree was exhausted, so no larger set exists.
    pub certified: bool,
    pub stats: SearchStats,
}

/// Precomputed tables for one group.
pub struct Searcher {
    group: AbelianGroup,
    modified: bool,
    add: Vec<u16>,
    neg: Vec<u16>,
    double: Vec<u16>,
    orbit_min: Vec<u16>,
}

struct State<'a> {
    s: &'a Searcher,
    budget: u64,
    nodes: u64,
    aborted: bool,
    target: usize,
    best_len: usize,
    best: Option<Vec<usize>>,
    chosen: Vec<usize>,
    sums: Vec<bool>,
    doubles: Vec<u8>,
    p1: usize,
}

impl Searcher {
    pub fn new(group: &AbelianGroup, modified: bool) -> Result<Self> {
        let n = group.order();
        if n > SEARCH_LIMIT {
            return Err(Error::InvalidParameter("group too large for S2 search"));
        }
        let mut add = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let s = group.add(a, b) as u16;
                add[a * n + b] = s;
                add[b * n + a] = s;
            }
        }
        let neg = (0..n).map(|a| group.neg(a) as u16).collect();
        let double = (0..n).map(|a| add[a * n + a]).collect();
        // componentwise unit multipliers
        let mut mults: Vec<Vec<usize>> = vec![Vec::new()];
        for &m in group.moduli() {
            let units: Vec<usize> = (0..m).filter(|&u| gcd(u, m) == 1 || m == 1).collect();
            mults = mults
                .iter()
                .flat_map(|prefix| {
                    units.iter().map(move |&u| {
                        let mut p = prefix.clone();
                        p.push(u);
                        p
                    })
                })
                .collect();
        }
        let orbit_min = (0..n)
            .map(|x| {
                let t = group.tuple(x);
                mults
                    .iter()
                    .map(|mu| {
                        let y: Vec<usize> = t.iter().zip(mu).zip(group.moduli()).map(|((&a, &u), &m)| a * u % m).collect();
                        group.index(&y).unwrap()
                    })
                    .min()
                    .unwrap() as u16
            })
            .collect();
        Ok(Searcher { group: group.clone(), modified, add, neg, double, orbit_min })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn modified(&self) -> bool {
        self.modified
    }

    /// Candidates for the second member: multiplier-orbit minima, in increasing order.
    pub fn branches(&self) -> Vec<usize> {
        (1..self.group.order()).filter(|&x| self.orbit_min[x] as usize == x).collect()
    }

    /// Explores all sets whose second member is `p1`, looking for more than `floor` members.
    /// Returns the best set above `floor` (if any), whether the branch was exhausted, and the node count.
    pub fn run_branch(&self, p1: usize, floor: usize, target: Option<usize>, budget: u64) -> (Option<Vec<usize>>, bool, u64) {
        let n = self.group.order();
        let mut st = State {
            s: self,
            budget,
            nodes: 0,
            aborted: false,
            target: target.unwrap_or(usize::MAX),
            best_len: floor,
            best: None,
            chosen: vec![0],
            sums: vec![false; n],
            doubles: vec![0; n],
            p1,
        };
        st.doubles[self.double[0] as usize] = 1;
        if !st.can_add(p1) {
            return (None, true, 0);
        }
        st.push(p1);
        let cands: Vec<usize> = (p1 + 1..n).filter(|&z| st.can_add(z)).collect();
        st.dfs(&cands);
        (st.best, !st.aborted, st.nodes)
    }

    #[inline]
    fn offset(&self, a: usize, b: usize) -> usize {
        self.add[a * self.group.order() + b] as usize
    }
}

impl State<'_> {
    fn can_add(&self, z: usize) -> bool {
        let s = self.s;
        for &c in &self.chosen {
            let sum = s.offset(z, c);
            if self.sums[sum] || (s.modified && self.doubles[sum] > 0) {
                return false;
            }
            // canonical form: every difference lies in an orbit whose least element is >= p1
            let diff = s.offset(z, s.neg[c] as usize);
            if (s.orbit_min[diff] as usize) < self.p1 {
                return false;
            }
        }
        !(s.modified && self.sums[s.double[z] as usize])
    }

    fn push(&mut self, z: usize) {
        let s = self.s;
        for &c in &self.chosen {
            self.sums[s.offset(z, c)] = true;
        }
        self.doubles[s.double[z] as usize] += 1;
        self.chosen.push(z);
    }

    fn pop(&mut self) {
        let s = self.s;
        let z = self.chosen.pop().unwrap();
        for &c in &self.chosen {
            self.sums[s.offset(z, c)] = false;
        }
        self.doubles[s.double[z] as usize] -= 1;
    }

    fn dfs(&mut self, cands: &[usize]) {
        self.nodes += 1;
        if self.chosen.len() > self.best_len {
            self.best_len = self.chosen.len();
            self.best = Some(self.chosen.clone());
        }
        if self.best_len >= self.target {
            return;
        }
        if self.nodes >= self.budget {
            self.aborted = true;
            return;
        }
        for (i, &z) in cands.iter().enumerate() {
            if self.chosen.len() + (cands.len() - i) <= self.best_len {
                return;
            }
            self.push(z);
            let next: Vec<usize> = cands[i + 1..].iter().copied().filter(|&y| self.can_add(y)).collect();
            if self.chosen.len() + next.len() > self.best_len {
                self.dfs(&next);
            } else if self.chosen.len() > self.best_len {
                self.best_len = self.chosen.len();
                self.best = Some(self.chosen.clone());
            }
            self.pop();
            if self.aborted || self.best_len >= self.target {
                return;
            }
        }
    }
}

/// Largest S2-set (or modified S2-set) found within `budget` search nodes.
pub fn search_max_s2(h: &AbelianGroup, modified: bool, budget: u64) -> Result<SearchOutcome> {
    run(h, modified, None, budget)
}

/// Looks for a set of at least `k` members. `Ok(None)` with a certified flag means none exists.
pub fn search_s2_of_size(h: &AbelianGroup, modified: bool, k: usize, budget: u64) -> Result<(Option<S2Set>, bool, SearchStats)> {
    let out = run(h, modified, Some(k), budget)?;
    let stats = out.stats;
    if out.set.len() >= k {
        Ok((Some(out.set), true, stats))
    } else {
        Ok((None, out.certified, stats))
    }
}

fn run(h: &AbelianGroup, modified: bool, target: Option<usize>, budget: u64) -> Result<SearchOutcome> {
    let searcher = Searcher::new(h, modified)?;
    let mut best = vec![0usize];
    let mut certified = true;
    let mut nodes = 1u64;
    for p1 in searcher.branches() {
        if target.is_some_and(|t| best.len() >= t) {
            break;
        }
        let left = budget.saturating_sub(nodes);
        if left == 0 {
            certified = false;
            break;
        }
        let (found, done, used) = searcher.run_branch(p1, best.len(), target, left);
        nodes += used;
        if let Some(set) = found {
            best = set;
        } else if best.len() < 2 {
            best = vec![0, p1];
        }
        if !done {
            certified = false;
            break;
        }
    }
    let set = S2Set::new(h.clone(), best)?;
    if modified && !set.is_modified {
        return Err(Error::Hypothesis("search produced a non-modified set"));
    }
    Ok(SearchOutcome { set, certified, stats: SearchStats { nodes } })
}
