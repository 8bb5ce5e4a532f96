//! Lexicographic permutation unranking via the factorial number system.

use alloc::vec::Vec;

use thiserror::Error;

/// Largest `m` whose `m!` fits in a `u64`.
pub const MAX_PERMUTATION_SIZE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("{m}! does not fit in 64 bits; use at most {max} elements", max = MAX_PERMUTATION_SIZE)]
    TooLarge { m: usize },
    #[error("rank {rank} out of range for permutations of {m} elements ({count} total)")]
    RankOutOfRange { rank: u64, m: usize, count: u64 },
}

pub fn factorial(m: usize) -> Result<u64, PermutationError> {
    if m > MAX_PERMUTATION_SIZE {
        return Err(PermutationError::TooLarge { m });
    }
    Ok((1..=m as u64).product())
}

/// The `rank`-th permutation of `0..m` in lexicographic order.
pub fn unrank_permutation(rank: u64, m: usize) -> Result<Vec<usize>, PermutationError> {
    let count = factorial(m)?;
    if rank >= count {
        return Err(PermutationError::RankOutOfRange { rank, m, count });
    }
    let mut pool: Vec<usize> = (0..m).collect();
    let mut out = Vec::with_capacity(m);
    let mut rest = rank;
    let mut block = count;
    for remaining in (1..=m as u64).rev() {
        block /= remaining;
        let digit = (rest / block) as usize;
        rest %= block;
        out.push(pool.remove(digit));
    }
    Ok(out)
}

/// All `m!` permutations, indexed by lexicographic rank.
pub fn permutation_table(m: usize) -> Result<Vec<Vec<usize>>, PermutationError> {
    let count = factorial(m)?;
    (0..count).map(|rank| unrank_permutation(rank, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn table_entries() {
        assert_eq!(unrank_permutation(0, 4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(unrank_permutation(1, 4).unwrap(), vec![0, 1, 3, 2]);
        assert_eq!(unrank_permutation(7, 4).unwrap(), vec![1, 0, 3, 2]);
        assert_eq!(unrank_permutation(19, 4).unwrap(), vec![3, 0, 2, 1]);
        assert_eq!(unrank_permutation(23, 4).unwrap(), vec![3, 2, 1, 0]);
    }

    #[test]
    fn edge_sizes() {
        assert_eq!(unrank_permutation(0, 0).unwrap(), Vec::<usize>::new());
        assert_eq!(unrank_permutation(0, 1).unwrap(), vec![0]);
        assert_eq!(
            unrank_permutation(factorial(20).unwrap() - 1, 20).unwrap(),
            (0..20).rev().collect::<Vec<_>>()
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            unrank_permutation(24, 4),
            Err(PermutationError::RankOutOfRange { rank: 24, m: 4, count: 24 })
        );
        assert_eq!(factorial(21), Err(PermutationError::TooLarge { m: 21 }));
    }

    #[test]
    fn bijective_and_sorted() {
        for m in 0..=6 {
            let table = permutation_table(m).unwrap();
            assert_eq!(table.len() as u64, factorial(m).unwrap());
            for w in table.windows(2) {
                assert!(w[0] < w[1]);
            }
            for p in &table {
                let mut s = p.clone();
                s.sort_unstable();
                assert_eq!(s, (0..m).collect::<Vec<_>>());
            }
        }
    }
}
