//! Faithful permutation realizations of small finite Coxeter groups, used to
//! cross-check the word engine.

use super::matrix::Order;
use super::system::CoxeterSystem;
use crate::error::{Error, Result};

/// Generator images as permutations (image arrays) of a small point set.
#[derive(Debug, Clone)]
pub struct PermutationOracle {
    degree: usize,
    generators: Vec<Vec<u16>>,
}

impl PermutationOracle {
    /// Supports `A1`, `A2`, `A3`, `B2`, `B3` and `I2(m)` in any node labelling.
    pub fn new(system: &CoxeterSystem) -> Result<Self> {
        let m = system.matrix();
        let rank = system.rank();
        let bond = |s: usize, t: usize| m.order(s, t);
        match rank {
            1 => Ok(Self::from_gens(2, vec![vec![1, 0]])),
            2 => match bond(0, 1) {
                Order::Infinite => Err(Error::UnsupportedType),
                Order::Finite(2) => Ok(Self::from_gens(4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]])),
                Order::Finite(3) => Ok(Self::from_gens(3, vec![transposition(3, 0, 1), transposition(3, 1, 2)])),
                Order::Finite(k) => {
                    // Reflections of the regular k-gon on its vertices.
                    let k = k as i64;
                    let refl = |c: i64| (0..k).map(|i| ((c - i).rem_euclid(k)) as u16).collect::<Vec<_>>();
                    Ok(Self::from_gens(k as usize, vec![refl(0), refl(1)]))
                }
            },
            3 => {
                // Need a path a - b - c with m(a,c) = 2.
                let ends: Vec<usize> = (0..3)
                    .filter(|&v| (0..3).filter(|&u| u != v && bond(u, v) != Order::Finite(2)).count() == 1)
                    .collect();
                if ends.len() != 2 {
                    return Err(Error::UnsupportedType);
                }
                let (a, c) = (ends[0], ends[1]);
                let b = 3 - a - c;
                if bond(a, c) != Order::Finite(2) {
                    return Err(Error::UnsupportedType);
                }
                let mut gens = vec![Vec::new(); 3];
                match (bond(a, b), bond(b, c)) {
                    (Order::Finite(3), Order::Finite(3)) => {
                        gens[a] = transposition(4, 0, 1);
                        gens[b] = transposition(4, 1, 2);
                        gens[c] = transposition(4, 2, 3);
                        Ok(Self::from_gens(4, gens))
                    }
                    (Order::Finite(4), Order::Finite(3)) | (Order::Finite(3), Order::Finite(4)) => {
                        // Signed permutations of three coordinates; point 2i is +e_i, 2i+1 is -e_i.
                        let (sign_node, mid, far) = if bond(a, b) == Order::Finite(4) { (a, b, c) } else { (c, b, a) };
                        gens[sign_node] = transposition(6, 0, 1);
                        gens[mid] = signed_swap(0, 1);
                        gens[far] = signed_swap(1, 2);
                        Ok(Self::from_gens(6, gens))
                    }
                    _ => Err(Error::UnsupportedType),
                }
            }
            _ => Err(Error::UnsupportedType),
        }
    }

    fn from_gens(degree: usize, generators: Vec<Vec<u16>>) -> Self {
        PermutationOracle { degree, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Vec<u16>] {
        &self.generators
    }

    /// Image of a word; letters act left to right.
    pub fn realize(&self, word: &[u8]) -> Vec<u16> {
        let mut perm: Vec<u16> = (0..self.degree as u16).collect();
        for &s in word {
            let g = &self.generators[s as usize];
            for x in perm.iter_mut() {
                *x = g[*x as usize];
            }
        }
        perm
    }
}

fn transposition(degree: usize, i: usize, j: usize) -> Vec<u16> {
    let mut p: Vec<u16> = (0..degree as u16).collect();
    p.swap(i, j);
    p
}

fn signed_swap(i: usize, j: usize) -> Vec<u16> {
    let mut p: Vec<u16> = (0..6).collect();
    p.swap(2 * i, 2 * j);
    p.swap(2 * i + 1, 2 * j + 1);
    p
}

/// One-shot form of [`PermutationOracle::realize`].
pub fn oracle_realize(system: &CoxeterSystem, word: &[u8]) -> Result<Vec<u16>> {
    Ok(PermutationOracle::new(system)?.realize(word))
}
