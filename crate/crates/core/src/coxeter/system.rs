use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::classify::is_finite_type;
use super::matrix::{CoxeterMatrix, Order};
use super::word::{CanonicalElement, GenSet, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A permutation of the generators preserving every bond order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<u8>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism { perm: (0..rank as u8).collect() }
    }

    pub fn new(matrix: &CoxeterMatrix, perm: Vec<u8>) -> Result<Self> {
        let rank = matrix.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank {
            return Err(Error::PreconditionViolated("permutation has wrong length".into()));
        }
        for &p in &perm {
            if p as usize >= rank || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::PreconditionViolated("not a permutation of the generators".into()));
            }
        }
        let sigma = DiagramAutomorphism { perm };
        for s in 0..rank {
            for t in 0..rank {
                if matrix.order(sigma.apply(s), sigma.apply(t)) != matrix.order(s, t) {
                    return Err(Error::PreconditionViolated(format!(
                        "permutation does not preserve m({s},{t})"
                    )));
                }
            }
        }
        Ok(sigma)
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<u8>) -> Self {
        DiagramAutomorphism { perm }
    }

    pub fn apply(&self, s: usize) -> usize {
        self.perm[s] as usize
    }

    pub fn apply_set(&self, set: GenSet) -> GenSet {
        set.iter().map(|s| self.apply(s)).collect()
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self` after `first`.
    pub fn after(&self, first: &DiagramAutomorphism) -> DiagramAutomorphism {
        DiagramAutomorphism { perm: first.perm.iter().map(|&s| self.perm[s as usize]).collect() }
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A parabolic type `J` together with its sphericity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParabolicType {
    pub generators: GenSet,
    pub spherical: bool,
}

/// Outcome of evaluating the descent lemma at one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentLemmaReport {
    /// Left descent set of `w`.
    pub descents: GenSet,
    /// Whether `ℓ(wσ(s)) < ℓ(w)` and `ℓ(swσ(s)) = ℓ(w)` hold for all `s` in the descent set.
    pub hypotheses_hold: bool,
    pub sigma_preserves: bool,
    pub is_longest: bool,
    pub twisted_conjugation_fixes: bool,
}

impl DescentLemmaReport {
    /// True unless the hypotheses hold and some conclusion fails.
    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold || (self.sigma_preserves && self.is_longest && self.twisted_conjugation_fixes)
    }
}

enum Closure {
    Shorter(Vec<u8>),
    Reduced(HashSet<Vec<u8>>),
}

/// A validated Coxeter system with word-problem machinery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    irreducible: bool,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let rank = matrix.rank();
        let mut system = CoxeterSystem { matrix, irreducible: false };
        system.irreducible = (1..rank).all(|t| system.graph_distance(0, t).is_some());
        system
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    fn check_word(&self, word: &[u8]) -> Result<()> {
        match word.iter().find(|&&s| s as usize >= self.rank()) {
            Some(&s) => Err(Error::InvalidGenerator { index: s as usize, rank: self.rank() }),
            None => Ok(()),
        }
    }

    /// Normal form via the braid-move closure. Panics on out-of-range letters;
    /// use [`CoxeterSystem::try_reduce`] for unchecked input.
    pub fn reduce(&self, word: &[u8]) -> CanonicalElement {
        self.try_reduce(word).expect("word letters must be below the rank")
    }

    pub fn try_reduce(&self, word: &[u8]) -> Result<CanonicalElement> {
        self.check_word(word)?;
        let mut current = free_reduce(word);
        loop {
            match self.braid_closure(&current) {
                Closure::Shorter(shorter) => current = free_reduce(&shorter),
                Closure::Reduced(words) => {
                    let least = words.into_iter().min().unwrap_or_default();
                    return Ok(CanonicalElement { word: Word(least) });
                }
            }
        }
    }

    // Explores every word reachable by braid moves. Stops as soon as a move
    // creates two equal adjacent letters, returning the word with that pair
    // deleted.
    fn braid_closure(&self, start: &[u8]) -> Closure {
        let mut seen = HashSet::from([start.to_vec()]);
        let mut queue = VecDeque::from([start.to_vec()]);
        while let Some(word) = queue.pop_front() {
            for i in 0..word.len().saturating_sub(1) {
                let (a, b) = (word[i], word[i + 1]);
                let m = match self.matrix.order(a as usize, b as usize) {
                    Order::Finite(m) => m as usize,
                    Order::Infinite => continue,
                };
                if i + m > word.len() || !alternates(&word[i..i + m], a, b) {
                    continue;
                }
                let mut next = word.clone();
                for (k, slot) in next[i..i + m].iter_mut().enumerate() {
                    *slot = if k % 2 == 0 { b } else { a };
                }
                if i > 0 && next[i - 1] == next[i] {
                    next.drain(i - 1..=i);
                    return Closure::Shorter(next);
                }
                if i + m < next.len() && next[i + m - 1] == next[i + m] {
                    next.drain(i + m - 1..=i + m);
                    return Closure::Shorter(next);
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Closure::Reduced(seen)
    }

    pub fn length(&self, word: &[u8]) -> usize {
        self.reduce(word).length()
    }

    pub fn multiply(&self, u: &CanonicalElement, v: &CanonicalElement) -> CanonicalElement {
        let mut word = u.letters().to_vec();
        word.extend_from_slice(v.letters());
        self.reduce(&word)
    }

    pub fn inverse(&self, u: &CanonicalElement) -> CanonicalElement {
        let word: Vec<u8> = u.letters().iter().rev().copied().collect();
        self.reduce(&word)
    }

    pub fn generator(&self, s: usize) -> CanonicalElement {
        CanonicalElement { word: Word(vec![s as u8]) }
    }

    pub fn descents(&self, elt: &CanonicalElement, side: Side) -> GenSet {
        let len = elt.length();
        (0..self.rank())
            .filter(|&s| {
                let mut word = Vec::with_capacity(len + 1);
                match side {
                    Side::Left => {
                        word.push(s as u8);
                        word.extend_from_slice(elt.letters());
                    }
                    Side::Right => {
                        word.extend_from_slice(elt.letters());
                        word.push(s as u8);
                    }
                }
                self.length(&word) < len
            })
            .collect()
    }

    /// Generators occurring in a reduced expression (the same set for all of them).
    pub fn support(&self, elt: &CanonicalElement) -> GenSet {
        elt.letters().iter().map(|&s| s as usize).collect()
    }

    pub fn is_spherical(&self, set: GenSet) -> bool {
        is_finite_type(&self.matrix, set)
    }

    pub fn parabolic(&self, set: GenSet) -> ParabolicType {
        ParabolicType { generators: set, spherical: self.is_spherical(set) }
    }

    /// Longest element of the spherical parabolic subgroup `W_J`.
    pub fn longest_element(&self, set: GenSet) -> Result<CanonicalElement> {
        if !self.is_spherical(set) {
            return Err(Error::NonSphericalParabolic);
        }
        let mut word: Vec<u8> = Vec::new();
        'grow: loop {
            for s in set.iter() {
                let mut longer = word.clone();
                longer.push(s as u8);
                let reduced = self.reduce(&longer);
                if reduced.length() > word.len() {
                    word = reduced.letters().to_vec();
                    continue 'grow;
                }
            }
            return Ok(self.reduce(&word));
        }
    }

    /// Shortest-path distance in the Coxeter graph (edges where `m(s,t) ≥ 3`);
    /// `None` means infinite.
    pub fn graph_distance(&self, s: usize, t: usize) -> Option<usize> {
        let rank = self.rank();
        let mut dist = vec![usize::MAX; rank];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                return Some(dist[u]);
            }
            for v in 0..rank {
                if v != u && dist[v] == usize::MAX && self.matrix.order(u, v) != Order::Finite(2) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Minimal graph distance between the supports; infinite when either element is trivial.
    pub fn coxeter_distance(&self, u: &CanonicalElement, v: &CanonicalElement) -> Option<usize> {
        let (su, sv) = (self.support(u), self.support(v));
        su.iter()
            .flat_map(|s| sv.iter().map(move |t| (s, t)))
            .filter_map(|(s, t)| self.graph_distance(s, t))
            .min()
    }

    /// Whether `s` commutes with `w`, for `w` in the parabolic subgroup avoiding `s`.
    pub fn commutes_with_support(&self, s: usize, w: &CanonicalElement) -> Result<bool> {
        if s >= self.rank() {
            return Err(Error::InvalidGenerator { index: s, rank: self.rank() });
        }
        if self.support(w).contains(s) {
            return Err(Error::PreconditionViolated(format!("generator {s} occurs in the support of {w}")));
        }
        let gen = self.generator(s);
        Ok(self.multiply(&gen, w) == self.multiply(w, &gen))
    }

    pub fn descent_lemma_witness(&self, sigma: &DiagramAutomorphism, w: &CanonicalElement) -> DescentLemmaReport {
        let descents = self.descents(w, Side::Left);
        let len = w.length();
        let hypotheses_hold = descents.iter().all(|s| {
            let twisted = self.generator(sigma.apply(s));
            let right = self.multiply(w, &twisted);
            right.length() < len && self.multiply(&self.generator(s), &right).length() == len
        });
        let mut report = DescentLemmaReport {
            descents,
            hypotheses_hold,
            sigma_preserves: false,
            is_longest: false,
            twisted_conjugation_fixes: false,
        };
        if hypotheses_hold {
            report.sigma_preserves = sigma.apply_set(descents) == descents;
            report.is_longest = self.longest_element(descents).map(|wj| &wj == w).unwrap_or(false);
            report.twisted_conjugation_fixes = descents.iter().all(|s| {
                let twisted = self.generator(sigma.apply(s));
                self.multiply(&self.generator(s), &self.multiply(w, &twisted)) == *w
            });
        }
        report
    }
}

impl CoxeterMatrix {
    /// All bond-preserving permutations of the generators, in lexicographic order.
    pub fn diagram_automorphisms(&self) -> Vec<DiagramAutomorphism> {
        fn extend(matrix: &CoxeterMatrix, perm: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<DiagramAutomorphism>) {
            let s = perm.len();
            if s == matrix.rank() {
                out.push(DiagramAutomorphism::from_perm_unchecked(perm.clone()));
                return;
            }
            for image in 0..matrix.rank() {
                if used[image] {
                    continue;
                }
                let consistent = (0..s).all(|t| matrix.order(image, perm[t] as usize) == matrix.order(s, t));
                if consistent {
                    used[image] = true;
                    perm.push(image as u8);
                    extend(matrix, perm, used, out);
                    perm.pop();
                    used[image] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(self, &mut Vec::new(), &mut vec![false; self.rank()], &mut out);
        out
    }
}

fn alternates(block: &[u8], a: u8, b: u8) -> bool {
    block.iter().enumerate().all(|(k, &x)| x == if k % 2 == 0 { a } else { b })
}

fn free_reduce(word: &[u8]) -> Vec<u8> {
    let mut stack: Vec<u8> = Vec::with_capacity(word.len());
    for &s in word {
        if stack.last() == Some(&s) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    stack
}
