use indexmap::IndexSet;

use crate::error::{Error, Result};

/// A permutation group stored as the explicit list of its elements.
///
/// Permutations are image arrays on `0..degree`. Elements are listed in the
/// order the closure discovers them, starting with the identity.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Box<[u16]>>,
    elements: IndexSet<Box<[u16]>>,
}

/// `x ↦ second(first(x))`.
pub fn compose(first: &[u16], second: &[u16]) -> Vec<u16> {
    first.iter().map(|&x| second[x as usize]).collect()
}

pub fn inverse(perm: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u16;
    }
    inv
}

pub fn is_identity(perm: &[u16]) -> bool {
    perm.iter().enumerate().all(|(i, &p)| i == p as usize)
}

/// Least `n ≥ 1` with `perm^n = id`.
pub fn order(perm: &[u16]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut lcm = 1u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        lcm = lcm / gcd(lcm, len) * len;
    }
    lcm
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn power(perm: &[u16], mut e: u64) -> Vec<u16> {
    let mut result: Vec<u16> = (0..perm.len() as u16).collect();
    let mut base = perm.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = compose(&result, &base);
        }
        base = compose(&base, &base);
        e >>= 1;
    }
    result
}

fn is_permutation(perm: &[u16], degree: usize) -> bool {
    let mut seen = vec![false; degree];
    perm.len() == degree && perm.iter().all(|&p| (p as usize) < degree && !std::mem::replace(&mut seen[p as usize], true))
}

impl GeneratedGroup {
    /// Closure of `generators` under composition; `limit` caps the order.
    pub fn generate(degree: usize, generators: Vec<Vec<u16>>, limit: usize) -> Result<Self> {
        if generators.iter().any(|g| !is_permutation(g, degree)) {
            return Err(Error::PreconditionViolated("generator is not a permutation of the given degree".into()));
        }
        let generators: Vec<Box<[u16]>> = generators.into_iter().map(Vec::into_boxed_slice).collect();
        let mut elements: IndexSet<Box<[u16]>> = IndexSet::new();
        elements.insert((0..degree as u16).collect());
        let mut i = 0;
        let mut buf = vec![0u16; degree];
        while i < elements.len() {
            for g in &generators {
                let e = &elements[i];
                for (slot, &x) in buf.iter_mut().zip(e.iter()) {
                    *slot = g[x as usize];
                }
                if !elements.contains(buf.as_slice()) {
                    if elements.len() >= limit {
                        return Err(Error::Unsupported(format!("group order exceeds {limit}")));
                    }
                    elements.insert(buf.clone().into_boxed_slice());
                }
            }
            i += 1;
        }
        Ok(GeneratedGroup { degree, generators, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = &[u16]> {
        self.generators.iter().map(|g| &**g)
    }

    pub fn element(&self, i: usize) -> &[u16] {
        &self.elements[i]
    }

    pub fn index_of(&self, perm: &[u16]) -> Option<usize> {
        self.elements.get_index_of(perm)
    }

    pub fn contains(&self, perm: &[u16]) -> bool {
        self.elements.contains(perm)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u16]> {
        self.elements.iter().map(|e| &**e)
    }

    /// One line per element: the image array, space separated.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for e in self.iter() {
            let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}
