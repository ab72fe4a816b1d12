use std::collections::HashMap;

use super::system::{CoxeterSystem, DiagramAutomorphism};
use super::word::{CanonicalElement, GenSet};
use crate::error::{Error, Result};

/// Index of an element in a [`CoxeterGroupTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u16);

const MAX_ORDER: usize = 4096;

/// Full multiplication table of a finite Coxeter group, indexed by
/// breadth-first enumeration order (so index 0 is the identity).
#[derive(Debug, Clone)]
pub struct CoxeterGroupTable {
    system: CoxeterSystem,
    elements: Vec<CanonicalElement>,
    index: HashMap<CanonicalElement, Elem>,
    lengths: Vec<u8>,
    supports: Vec<GenSet>,
    right_gen: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    longest: Elem,
    opposition: DiagramAutomorphism,
}

impl CoxeterGroupTable {
    pub fn new(system: &CoxeterSystem) -> Result<Self> {
        let rank = system.rank();
        if !system.is_spherical(GenSet::full(rank)) {
            return Err(Error::NonSpherical);
        }
        let mut elements = vec![CanonicalElement::identity()];
        let mut index = HashMap::from([(CanonicalElement::identity(), Elem(0))]);
        let mut right_gen = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for s in 0..rank {
                let mut word = elements[i].letters().to_vec();
                word.push(s as u8);
                let next = system.reduce(&word);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= MAX_ORDER {
                            return Err(Error::Unsupported(format!("group order exceeds {MAX_ORDER}")));
                        }
                        let id = Elem(elements.len() as u16);
                        index.insert(next.clone(), id);
                        elements.push(next);
                        id
                    }
                };
                right_gen.push(id.0);
            }
            i += 1;
        }
        let n = elements.len();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut cur = a;
                for &s in elements[b].letters() {
                    cur = right_gen[cur * rank + s as usize] as usize;
                }
                mul[a * n + b] = cur as u16;
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).expect("finite group") as u16)
            .collect();
        let lengths: Vec<u8> = elements.iter().map(|e| e.length() as u8).collect();
        let longest = Elem((0..n).max_by_key(|&e| lengths[e]).expect("nonempty") as u16);
        let supports = elements.iter().map(|e| system.support(e)).collect();
        let mut table = CoxeterGroupTable {
            system: system.clone(),
            elements,
            index,
            lengths,
            supports,
            right_gen,
            mul,
            inv,
            longest,
            opposition: DiagramAutomorphism::identity(rank),
        };
        let perm = (0..rank)
            .map(|s| {
                let g = table.generator(s);
                let conj = table.mul(table.mul(longest, g), longest);
                table.elements[conj.0 as usize].letters()[0]
            })
            .collect();
        table.opposition = DiagramAutomorphism::new(system.matrix(), perm)?;
        Ok(table)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn longest(&self) -> Elem {
        self.longest
    }

    /// Conjugation by the longest element, as a diagram automorphism.
    pub fn opposition(&self) -> &DiagramAutomorphism {
        &self.opposition
    }

    pub fn generator(&self, s: usize) -> Elem {
        self.right(Elem(0), s)
    }

    pub fn right(&self, e: Elem, s: usize) -> Elem {
        Elem(self.right_gen[e.0 as usize * self.rank() + s])
    }

    pub fn left(&self, s: usize, e: Elem) -> Elem {
        self.mul(self.generator(s), e)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.0 as usize * self.order() + b.0 as usize])
    }

    pub fn inverse(&self, e: Elem) -> Elem {
        Elem(self.inv[e.0 as usize])
    }

    pub fn length(&self, e: Elem) -> usize {
        self.lengths[e.0 as usize] as usize
    }

    pub fn support(&self, e: Elem) -> GenSet {
        self.supports[e.0 as usize]
    }

    pub fn canonical(&self, e: Elem) -> &CanonicalElement {
        &self.elements[e.0 as usize]
    }

    pub fn elem(&self, c: &CanonicalElement) -> Option<Elem> {
        self.index.get(c).copied()
    }

    pub fn from_word(&self, word: &[u8]) -> Elem {
        word.iter().fold(Elem(0), |acc, &s| self.right(acc, s as usize))
    }

    pub fn left_descents(&self, e: Elem) -> GenSet {
        let len = self.length(e);
        (0..self.rank()).filter(|&s| self.length(self.left(s, e)) < len).collect()
    }

    pub fn right_descents(&self, e: Elem) -> GenSet {
        let len = self.length(e);
        (0..self.rank()).filter(|&s| self.length(self.right(e, s)) < len).collect()
    }

    pub fn in_parabolic(&self, e: Elem, set: GenSet) -> bool {
        self.support(e).is_subset(set)
    }

    /// Longest element of `W_J` (every subset of a finite group is spherical).
    pub fn longest_in(&self, set: GenSet) -> Elem {
        let mut cur = Elem(0);
        'grow: loop {
            for s in set.iter() {
                let next = self.right(cur, s);
                if self.length(next) > self.length(cur) {
                    cur = next;
                    continue 'grow;
                }
            }
            return cur;
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order() as u16).map(Elem)
    }

    /// Image of an element under a diagram automorphism.
    pub fn twist(&self, sigma: &DiagramAutomorphism, e: Elem) -> Elem {
        self.canonical(e)
            .letters()
            .iter()
            .fold(Elem(0), |acc, &s| self.right(acc, sigma.apply(s as usize)))
    }
}
