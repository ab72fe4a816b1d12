use std::fmt;

use crate::error::{Error, Result};

/// Order of the product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// File encoding: `0` stands for infinity.
    pub fn from_code(code: u32) -> Order {
        if code == 0 {
            Order::Infinite
        } else {
            Order::Finite(code)
        }
    }

    pub fn code(self) -> u32 {
        match self {
            Order::Finite(m) => m,
            Order::Infinite => 0,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Symmetric table of bond orders `m(s,t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Order>,
}

impl CoxeterMatrix {
    /// Builds a matrix from integer rows, `0` meaning infinity.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be at least 1".into()));
        }
        if rank > 32 {
            return Err(Error::InvalidMatrix(format!("rank {rank} exceeds 32")));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {rank}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&c| Order::from_code(c)));
        }
        let matrix = CoxeterMatrix { rank, entries };
        matrix.validate()?;
        Ok(matrix)
    }

    fn validate(&self) -> Result<()> {
        for s in 0..self.rank {
            for t in 0..self.rank {
                let m = self.order(s, t);
                if m != self.order(t, s) {
                    return Err(Error::InvalidMatrix(format!("m({s},{t}) != m({t},{s})")));
                }
                if s == t && m != Order::Finite(1) {
                    return Err(Error::InvalidMatrix(format!("diagonal entry m({s},{s}) must be 1")));
                }
                if s != t {
                    if let Order::Finite(k) = m {
                        if k < 2 {
                            return Err(Error::InvalidMatrix(format!(
                                "off-diagonal entry m({s},{t}) = {k} must be at least 2"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the text format: first line the rank `n`, then `n` rows of `n` integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))
        });
        let rank = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?? as usize;
        let mut rows = Vec::with_capacity(rank);
        for _ in 0..rank {
            let row = (0..rank)
                .map(|_| tokens.next().unwrap_or_else(|| Err(Error::Parse("matrix file is truncated".into()))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing data after matrix".into()));
        }
        Self::from_rows(&rows)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.rank);
        for s in 0..self.rank {
            let row: Vec<String> = (0..self.rank).map(|t| self.order(s, t).code().to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self, s: usize, t: usize) -> Order {
        self.entries[s * self.rank + t]
    }

    fn from_bonds(rank: usize, bonds: &[(usize, usize, u32)]) -> Self {
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t, m) in bonds {
            rows[s][t] = m;
            rows[t][s] = m;
        }
        Self::from_rows(&rows).expect("named Coxeter matrices are valid")
    }

    /// `A_n`: a path of `n` nodes with simple bonds.
    pub fn type_a(n: usize) -> Self {
        let bonds: Vec<_> = (1..n).map(|i| (i - 1, i, 3)).collect();
        Self::from_bonds(n, &bonds)
    }

    /// `B_n`: a path whose first bond has order 4.
    pub fn type_b(n: usize) -> Self {
        assert!(n >= 2, "B_n needs rank at least 2");
        let bonds: Vec<_> = (1..n).map(|i| (i - 1, i, if i == 1 { 4 } else { 3 })).collect();
        Self::from_bonds(n, &bonds)
    }

    /// `I_2(m)`; `m = 0` gives the infinite dihedral group.
    pub fn dihedral(m: u32) -> Self {
        Self::from_bonds(2, &[(0, 1, m)])
    }

    /// Affine `Ã_n`: a cycle of `n + 1` nodes (for `n = 1`, a single infinite bond).
    pub fn affine_a(n: usize) -> Self {
        if n == 1 {
            return Self::dihedral(0);
        }
        let bonds: Vec<_> = (0..=n).map(|i| (i, (i + 1) % (n + 1), 3)).collect();
        Self::from_bonds(n + 1, &bonds)
    }
}
