//! Table-driven arithmetic in small finite fields.

use crate::error::{Error, Result};

/// Largest supported order; tables are `q²` entries.
pub const MAX_ORDER: u32 = 256;

/// A finite field of order `q = p^k`.
///
/// Elements are the integers `0..q`, read as base-`p` coefficient vectors of
/// polynomials in a primitive element `x`. `0` and `1` are the additive and
/// multiplicative identities.
#[derive(Debug, Clone)]
pub struct FiniteField {
    q: u32,
    p: u32,
    degree: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frobenius: Vec<u16>,
    exp: Vec<u16>,
}

/// Returns `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Coefficients of the monic modulus, constant term first (leading 1 omitted).
fn fixed_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        (2, 2) => Some(vec![1, 1]),    // x^2 + x + 1
        (2, 3) => Some(vec![1, 1, 0]), // x^3 + x + 1
        (3, 2) => Some(vec![2, 1]),    // x^2 + x + 2
        _ => None,
    }
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::Unsupported(format!("field order {q} exceeds {MAX_ORDER}")));
        }
        let exp = if k == 1 {
            let g = (1..p).find(|&g| multiplicative_order_mod(g, p) == p - 1).expect("primitive root");
            let mut e = Vec::with_capacity(q as usize - 1);
            let mut cur = 1;
            for _ in 0..q - 1 {
                e.push(cur as u16);
                cur = cur * g % p;
            }
            e
        } else {
            let modulus = match fixed_modulus(p, k) {
                Some(m) => m,
                None => find_primitive_modulus(p, k),
            };
            powers_of_x(p, k, &modulus).expect("modulus is primitive")
        };
        Ok(Self::from_exp(q, p, k, exp))
    }

    fn from_exp(q: u32, p: u32, degree: u32, exp: Vec<u16>) -> Self {
        let n = q as usize;
        let mut log = vec![0u32; n];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let digits = |mut x: u32| {
            let mut d = vec![0u32; degree as usize];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum) as u16;
                mul[(a * q + b) as usize] = if a == 0 || b == 0 {
                    0
                } else {
                    exp[((log[a as usize] + log[b as usize]) % (q - 1)) as usize]
                };
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u16).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u16 })
            .collect();
        let frobenius = (0..q)
            .map(|a| (1..p).fold(a as u16, |acc, _| mul[(acc as u32 * q + a) as usize]))
            .collect();
        FiniteField { q, p, degree, add, mul, neg, inv, frobenius, exp }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// `k` in `q = p^k`; also the order of the Frobenius automorphism.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is defined as `0`.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// `x ↦ x^p`.
    #[inline]
    pub fn frobenius(&self, a: u16) -> u16 {
        self.frobenius[a as usize]
    }

    /// `x ↦ x^(p^e)`.
    pub fn frobenius_pow(&self, a: u16, e: u32) -> u16 {
        (0..e % self.degree).fold(a, |acc, _| self.frobenius(acc))
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u16 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn pow(&self, a: u16, e: u32) -> u16 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    pub fn dot(&self, a: &[u16], b: &[u16]) -> u16 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

fn multiplicative_order_mod(g: u32, p: u32) -> u32 {
    let (mut cur, mut k) = (g % p, 1);
    while cur != 1 {
        cur = cur * g % p;
        k += 1;
    }
    k
}

// Powers 1, x, x^2, ... in GF(p)[x]/(f); None unless x has order p^k - 1.
fn powers_of_x(p: u32, k: u32, low: &[u32]) -> Option<Vec<u16>> {
    let q = p.pow(k);
    let mut coeffs = vec![0u32; k as usize];
    coeffs[0] = 1;
    let mut out = Vec::with_capacity(q as usize - 1);
    let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u16;
    for i in 0..q - 1 {
        let e = encode(&coeffs);
        if i > 0 && e == 1 {
            return None;
        }
        out.push(e);
        // multiply by x: shift up, reduce x^k = -(low)
        let top = coeffs[k as usize - 1];
        for j in (1..k as usize).rev() {
            coeffs[j] = coeffs[j - 1];
        }
        coeffs[0] = 0;
        for (j, &c) in low.iter().enumerate() {
            coeffs[j] = (coeffs[j] + (p - c % p) * top) % p;
        }
    }
    (encode(&coeffs) == 1).then_some(out)
}

fn find_primitive_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    (0..count)
        .map(|code| {
            let mut low = Vec::with_capacity(k as usize);
            let mut c = code;
            for _ in 0..k {
                low.push(c % p);
                c /= p;
            }
            low
        })
        .find(|low| low[0] != 0 && powers_of_x(p, k, low).is_some())
        .expect("primitive polynomials exist in every degree")
}

/// Square-free part `q'` of `q` (`q = a²·q'`), with `q' = 0` when `q` is a perfect square.
pub fn square_free_part(q: u32) -> u32 {
    let mut rest = q;
    let mut part = 1;
    let mut d = 2;
    while d * d <= rest {
        let mut e = 0;
        while rest.is_multiple_of(d) {
            rest /= d;
            e += 1;
        }
        if e % 2 == 1 {
            part *= d;
        }
        d += 1;
    }
    part *= rest;
    if part == 1 {
        0
    } else {
        part
    }
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: u32) -> Option<u32> {
    let r = (n as f64).sqrt().round() as u32;
    (r * r == n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FiniteField) {
        let q = f.order() as u16;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                }
            }
        }
        // Cyclic multiplicative group.
        let g = f.primitive();
        let mut seen = std::collections::HashSet::new();
        let mut cur = 1;
        for _ in 0..q - 1 {
            seen.insert(cur);
            cur = f.mul(cur, g);
        }
        assert_eq!(seen.len(), q as usize - 1);
        // Frobenius is a field automorphism of order k.
        let id: Vec<u16> = (0..q).collect();
        let image = |e: u32| (0..q).map(|a| f.frobenius_pow(a, e)).collect::<Vec<_>>();
        assert_eq!(image(f.degree()), id);
        for e in 1..f.degree() {
            assert_ne!(image(e), id);
        }
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }

    #[test]
    fn field_axioms_for_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            check_axioms(&FiniteField::new(q).unwrap());
        }
    }

    #[test]
    fn gf4_examples() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.add(1, 1), 0);
        let roots: Vec<u16> = f.elements().filter(|&x| f.add(f.add(f.mul(x, x), x), 1) == 0).collect();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn gf2_idempotent_squares() {
        let f = FiniteField::new(2).unwrap();
        for x in 0..2 {
            assert_eq!(f.mul(x, x), x);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(FiniteField::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(12).is_err());
    }

    #[test]
    fn square_free_examples() {
        assert_eq!(square_free_part(12), 3);
        assert_eq!(square_free_part(9), 0);
        assert_eq!(square_free_part(2), 2);
        assert_eq!(square_free_part(8), 2);
        assert_eq!(square_free_part(1), 0);
        for q in 2..500u32 {
            let part = square_free_part(q);
            if part == 0 {
                assert!(exact_sqrt(q).is_some());
            } else {
                assert_eq!(q % part, 0);
                assert!(exact_sqrt(q / part).is_some(), "{q}");
                assert!((2..part).all(|d| !part.is_multiple_of(d * d)));
            }
        }
    }
}
