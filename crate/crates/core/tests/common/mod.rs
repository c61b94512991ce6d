//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the counting or labeling code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// All permutations of `1..=n`, by recursive insertion.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n as u32);
            out.push(q);
        }
    }
    out
}

pub fn descents(p: &[u32]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Permutations of `[d]` with `j - 1` descents, counted one by one.
pub fn eulerian(d: usize, j: usize) -> u64 {
    if j == 0 {
        return 0;
    }
    permutations(d).iter().filter(|p| descents(p) + 1 == j).count() as u64
}

/// Tuples of `parts` integers in `[0, bound]` summing to `total`, by odometer.
pub fn compositions(bound: u32, parts: usize, total: i64) -> u64 {
    if total < 0 {
        return 0;
    }
    let mut digits = vec![0u32; parts];
    let mut count = 0;
    loop {
        if digits.iter().map(|&x| i64::from(x)).sum::<i64>() == total {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == parts {
                return count;
            }
            if digits[k] < bound {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Words of `[r]^d` whose alcove (given as vertex lists) has `d` vertices
/// on the facet `x_j = 0`.
pub fn facet_words(alcoves: &[(Vec<u32>, Vec<Vec<u32>>)], j: usize) -> BTreeSet<Vec<u32>> {
    alcoves
        .iter()
        .filter(|(_, verts)| verts.iter().filter(|v| v[j - 1] == 0).count() + 1 == verts.len())
        .map(|(w, _)| w.clone())
        .collect()
}

pub fn pow(base: u32, exp: usize) -> u64 {
    u64::from(base).pow(exp as u32)
}
