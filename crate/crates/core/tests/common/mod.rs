//! A deliberately naive model of thin categories used as an oracle.
//!
//! In a poset a sieve on `x` is determined by the domains of its arrows, a
//! down-closed subset of `↓x`. Everything here works on those sets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gsite::gtopology::GrothendieckTopology;
use gsite::{FinCategory, Sieve};

pub type Down = BTreeSet<usize>;
pub type Assignment = Vec<BTreeSet<Down>>;

#[derive(Debug, Clone)]
pub struct Poset {
    pub names: Vec<String>,
    /// `le[a][b]` iff `a <= b`.
    pub le: Vec<Vec<bool>>,
}

impl Poset {
    pub fn divisors(n: u64) -> Poset {
        let ds: Vec<u64> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
        let le = ds.iter().map(|&a| ds.iter().map(|&b| b % a == 0).collect()).collect();
        Poset {
            names: ds.iter().map(u64::to_string).collect(),
            le,
        }
    }

    pub fn from_relation(names: &[&str], below: &[(&str, &str)]) -> Poset {
        let n = names.len();
        let idx = |s: &str| names.iter().position(|&x| x == s).unwrap();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in below {
            le[idx(a)][idx(b)] = true;
        }
        Poset {
            names: names.iter().map(|s| s.to_string()).collect(),
            le,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).unwrap()
    }

    pub fn below(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&d| self.le[d][x]).collect()
    }

    /// Every down-closed subset of `↓x`, by brute force over all subsets.
    pub fn sieves(&self, x: usize) -> Vec<Down> {
        let under = self.below(x);
        let mut out = Vec::new();
        for mask in 0u64..(1 << under.len()) {
            let s: Down = under
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &d)| d)
                .collect();
            let closed = s
                .iter()
                .all(|&a| (0..self.len()).all(|b| !self.le[b][a] || s.contains(&b)));
            if closed {
                out.push(s);
            }
        }
        out
    }

    pub fn maximal(&self, x: usize) -> Down {
        self.below(x).into_iter().collect()
    }

    /// Pullback along `y <= x`.
    pub fn pullback(&self, y: usize, s: &Down) -> Down {
        s.iter().copied().filter(|&d| self.le[d][y]).collect()
    }

    /// For every `m <= x` there is `k <= m` with `k` in `s`.
    pub fn is_dense_cover(&self, x: usize, s: &Down) -> bool {
        self.below(x)
            .into_iter()
            .all(|m| self.below(m).iter().any(|k| s.contains(k)))
    }

    pub fn is_topology(&self, j: &Assignment) -> bool {
        for x in 0..self.len() {
            if !j[x].contains(&self.maximal(x)) {
                return false;
            }
            for s in &j[x] {
                for y in self.below(x) {
                    if !j[y].contains(&self.pullback(y, s)) {
                        return false;
                    }
                }
            }
            for r in self.sieves(x) {
                for s in &j[x] {
                    if s.iter().all(|&y| j[y].contains(&self.pullback(y, &r))) && !j[x].contains(&r) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every topology, by filtering every assignment.
    pub fn all_topologies(&self) -> Vec<Assignment> {
        let universes: Vec<Vec<Down>> = (0..self.len()).map(|x| self.sieves(x)).collect();
        let total: u32 = universes.iter().map(|u| u.len() as u32).sum();
        assert!(total <= 24, "brute force too large");
        let mut out = Vec::new();
        for mask in 0u64..(1 << total) {
            let mut j = Vec::new();
            let mut bit = 0;
            for u in &universes {
                let mut set = BTreeSet::new();
                for s in u {
                    if mask >> bit & 1 == 1 {
                        set.insert(s.clone());
                    }
                    bit += 1;
                }
                j.push(set);
            }
            if self.is_topology(&j) {
                out.push(j);
            }
        }
        out
    }
}

/// A library sieve on a table poset, as the set of its arrows' domains.
pub fn down(c: &FinCategory, p: &Poset, s: &Sieve) -> Down {
    s.arrows(c)
        .unwrap()
        .iter()
        .map(|a| p.index(c.object_name(c.dom(a))))
        .collect()
}

/// A library topology as an oracle assignment, indexed by oracle objects.
pub fn assignment(p: &Poset, j: &GrothendieckTopology) -> Assignment {
    let c = j.category();
    let mut out = vec![BTreeSet::new(); p.len()];
    for x in c.objects() {
        let k = p.index(c.object_name(x));
        out[k] = j.covers(x).unwrap().iter().map(|s| down(c, p, s)).collect();
    }
    out
}
