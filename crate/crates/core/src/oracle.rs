//! Brute-force reference for minimal representations: iterative deepening
//! over nondecreasing sequences of admissible x. Shares nothing with the
//! layer table beyond field arithmetic.

use crate::error::{Error, Result};
use crate::representer::ReprProblem;

fn admissible_recips(problem: &ReprProblem) -> Vec<u64> {
    let field = problem.field;
    (1..=problem.height)
        .filter(|&x| x % field.modulus() != 0)
        .map(|x| {
            let xk = field.pow(x, problem.k as u64);
            field.inv(xk).expect("admissible x is a unit")
        })
        .collect()
}

fn dfs(
    problem: &ReprProblem,
    recips: &[u64],
    start: usize,
    remaining: usize,
    sum: u64,
    visit: &mut dyn FnMut(u64),
) {
    if remaining == 0 {
        visit(sum);
        return;
    }
    for i in start..recips.len() {
        let s = problem.field.add(sum, recips[i]);
        dfs(problem, recips, i, remaining - 1, s, visit);
    }
}

/// Minimal number of terms for every residue, searching multisets of size
/// up to `max_len`. Residues not reached are `None`.
pub fn min_terms_all(problem: &ReprProblem, max_len: usize) -> Vec<Option<u32>> {
    let p = problem.field.order();
    let recips = admissible_recips(problem);
    let mut best = vec![None; p];
    let mut found = 0;
    for len in 1..=max_len {
        if found == p {
            break;
        }
        dfs(problem, &recips, 0, len, 0, &mut |s| {
            let slot = &mut best[s as usize];
            if slot.is_none() {
                *slot = Some(len as u32);
                found += 1;
            }
        });
    }
    best
}

/// Oracle n_max with the natural search limit p (x = 1 repeated suffices).
pub fn n_max(problem: &ReprProblem) -> Result<(u32, Vec<u32>)> {
    let all = min_terms_all(problem, problem.field.order());
    let missing: Vec<u64> = (0..all.len() as u64)
        .filter(|&r| all[r as usize].is_none())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Unreachable(missing));
    }
    let per: Vec<u32> = all.into_iter().map(|n| n.unwrap()).collect();
    Ok((per.iter().copied().max().unwrap_or(0), per))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn small_cases() {
        let pr = ReprProblem::with_height(make_field(7).unwrap(), 1, 7).unwrap();
        assert_eq!(n_max(&pr).unwrap(), (2, vec![2, 1, 1, 1, 1, 1, 1]));
        let pr = ReprProblem::with_height(make_field(7).unwrap(), 1, 2).unwrap();
        let (_, per) = n_max(&pr).unwrap();
        assert_eq!(per[3], 3);
        let pr = ReprProblem::with_height(make_field(3).unwrap(), 1, 1).unwrap();
        assert_eq!(n_max(&pr).unwrap(), (3, vec![3, 1, 2]));
    }
}
