use itertools::Itertools;

use super::FiniteSpectrum;

/// Maximal chains of the subposet on `subset`, each listed bottom-up.
pub fn maximal_chains(spec: &FiniteSpectrum, subset: &[usize]) -> Vec<Vec<usize>> {
    let lt = |i: usize, j: usize| i != j && spec.leq(i, j);
    let covers = |i: usize, j: usize| lt(i, j) && !subset.iter().any(|&k| lt(i, k) && lt(k, j));
    let minimal: Vec<usize> = subset
        .iter()
        .copied()
        .filter(|&i| !subset.iter().any(|&k| lt(k, i)))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        let ups: Vec<usize> = subset.iter().copied().filter(|&j| covers(last, j)).collect();
        if ups.is_empty() {
            out.push(chain);
        } else {
            for j in ups {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// A smallest set of chains covering every node, chosen among the maximal
/// chains by exhaustive search.
pub fn chain_decomposition(spec: &FiniteSpectrum) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..spec.len()).collect();
    let chains = maximal_chains(spec, &all);
    for k in 1..=chains.len() {
        if let Some(pick) = chains
            .iter()
            .combinations(k)
            .find(|pick| all.iter().all(|i| pick.iter().any(|c| c.contains(i))))
        {
            return pick.into_iter().cloned().collect();
        }
    }
    Vec::new()
}

/// Size of a largest antichain, by brute force over all subsets.
pub fn width(spec: &FiniteSpectrum) -> usize {
    let n = spec.len();
    assert!(n <= 20, "brute-force width is for small posets");
    (0u32..1 << n)
        .filter(|mask| {
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            members
                .iter()
                .tuple_combinations()
                .all(|(&a, &b)| !spec.leq(a, b) && !spec.leq(b, a))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::tests::{inert_at_3, rank_two, sqrt2_at_7};

    #[test]
    fn examples() {
        let s = sqrt2_at_7();
        assert_eq!(chain_decomposition(&s), vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(width(&s), 2);
        assert_eq!(chain_decomposition(&inert_at_3()), vec![vec![0, 1]]);
        assert_eq!(chain_decomposition(&rank_two()), vec![vec![0, 1, 2]]);
        assert_eq!(width(&rank_two()), 1);
    }

    #[test]
    fn chains_of_a_subset() {
        let s = sqrt2_at_7();
        assert_eq!(maximal_chains(&s, &[2]), vec![vec![2]]);
        assert_eq!(maximal_chains(&s, &[]), Vec::<Vec<usize>>::new());
    }
}
