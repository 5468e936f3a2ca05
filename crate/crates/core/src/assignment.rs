//! Minimum-cost perfect matching on a square cost matrix (Hungarian
//! method with row and column potentials), O(n^3).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `assignment[row] = column` minimising the summed cost, plus that sum.
pub fn min_cost_perfect_matching(cost: &[Vec<u64>]) -> Result<(u64, Vec<usize>)> {
    let n = cost.len();
    if cost.iter().any(|r| r.len() != n) {
        return Err(Error::NonSquare);
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    const INF: i64 = i64::MAX / 4;
    // 1-based: column 0 is a virtual start.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0;
        let mut min_to = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = INF;
            let mut col1 = 0;
            for c in 1..=n {
                if used[c] {
                    continue;
                }
                let reduced = cost[r - 1][c - 1] as i64 - u[r] - v[c];
                if reduced < min_to[c] {
                    min_to[c] = reduced;
                    way[c] = col0;
                }
                if min_to[c] < delta {
                    delta = min_to[c];
                    col1 = c;
                }
            }
            for c in 0..=n {
                if used[c] {
                    u[owner[c]] += delta;
                    v[c] -= delta;
                } else {
                    min_to[c] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for c in 1..=n {
        assignment[owner[c] - 1] = c - 1;
    }
    let total = assignment.iter().enumerate().map(|(r, &c)| cost[r][c]).sum();
    Ok((total, assignment))
}
