//! Finite-type recognition by the classification of connected Coxeter
//! diagrams: `A_n`, `B_n`, `D_n`, `E_6..E_8`, `F_4`, `H_3`, `H_4`, `I_2(m)`.

use super::matrix::{CoxeterMatrix, Order};
use super::word::GenSet;

/// True iff every connected component of the sub-diagram on `set` is of finite type.
pub(crate) fn is_finite_type(matrix: &CoxeterMatrix, set: GenSet) -> bool {
    components(matrix, set).iter().all(|comp| component_is_finite(matrix, comp))
}

fn joined(matrix: &CoxeterMatrix, s: usize, t: usize) -> bool {
    s != t && matrix.order(s, t) != Order::Finite(2)
}

fn components(matrix: &CoxeterMatrix, set: GenSet) -> Vec<Vec<usize>> {
    let mut seen = GenSet::EMPTY;
    let mut out = Vec::new();
    for start in set.iter() {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start);
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            for v in set.iter() {
                if !seen.contains(v) && joined(matrix, u, v) {
                    seen.insert(v);
                    comp.push(v);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn component_is_finite(matrix: &CoxeterMatrix, comp: &[usize]) -> bool {
    let n = comp.len();
    let mut edges = Vec::new();
    for (i, &s) in comp.iter().enumerate() {
        for &t in &comp[i + 1..] {
            if joined(matrix, s, t) {
                match matrix.order(s, t).finite() {
                    Some(m) => edges.push((s, t, m)),
                    None => return false,
                }
            }
        }
    }
    match n {
        1 => return true,
        2 => return true,
        _ => {}
    }
    // A connected diagram on n ≥ 3 nodes must be a tree.
    if edges.len() != n - 1 {
        return false;
    }
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 > 3).collect();
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let max_degree = comp.iter().map(|&v| degree(v)).max().unwrap_or(0);
    match heavy.len() {
        0 => {
            if max_degree <= 2 {
                return true; // A_n
            }
            let branch: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
            if branch.len() != 1 || degree(branch[0]) != 3 {
                return false;
            }
            let center = branch[0];
            let mut arms: Vec<usize> = edges
                .iter()
                .filter_map(|e| match (e.0 == center, e.1 == center) {
                    (true, _) => Some(e.1),
                    (_, true) => Some(e.0),
                    _ => None,
                })
                .map(|first| arm_length(&edges, center, first))
                .collect();
            arms.sort_unstable();
            // D_n: (1,1,k); E_6, E_7, E_8: (1,2,2), (1,2,3), (1,2,4).
            matches!(arms.as_slice(), [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4])
        }
        1 => {
            if max_degree > 2 {
                return false;
            }
            let (s, t, m) = *heavy[0];
            let path = path_order(&edges, comp);
            let pos_s = path.iter().position(|&v| v == s).expect("node on path");
            let pos_t = path.iter().position(|&v| v == t).expect("node on path");
            let edge_index = pos_s.min(pos_t);
            let at_end = edge_index == 0 || edge_index == n - 2;
            match m {
                4 => at_end || (n == 4 && edge_index == 1), // B_n, F_4
                5 => at_end && n <= 4,                       // H_3, H_4
                _ => false,
            }
        }
        _ => false,
    }
}

fn arm_length(edges: &[(usize, usize, u32)], center: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        let next = edges.iter().find_map(|e| {
            if e.0 == cur && e.1 != prev {
                Some(e.1)
            } else if e.1 == cur && e.0 != prev {
                Some(e.0)
            } else {
                None
            }
        });
        match next {
            Some(n) => {
                prev = cur;
                cur = n;
                len += 1;
            }
            None => return len,
        }
    }
}

fn path_order(edges: &[(usize, usize, u32)], comp: &[usize]) -> Vec<usize> {
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let start = comp.iter().copied().find(|&v| degree(v) == 1).expect("a path has an end");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = edges.iter().find_map(|e| {
        if e.0 == cur && e.1 != prev {
            Some(e.1)
        } else if e.1 == cur && e.0 != prev {
            Some(e.0)
        } else {
            None
        }
    }) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}
