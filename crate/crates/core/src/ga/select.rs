//! Rank-replication selection.
//!
//! Identical bitstrings occur only once in the ranking. Distinct chromosomes
//! are ordered by ascending fitness, ties broken by bitstring order with a 0
//! ranking before a 1 at the first differing position (so `01001` outranks
//! `10010` at equal fitness). Rank `r` gets weight `max(rank_levels - r, 1)`:
//! the best chromosome is replicated `rank_levels` parts, the next one part
//! fewer, and so on, with every surviving rank keeping at least one part —
//! that diversity floor is what lets higher-cardinality stepping stones
//! survive long enough to climb chained theories. The weights are scaled to
//! exactly the population size by largest-remainder apportionment, remainder
//! ties resolved toward better ranks. The best chromosome always ends up
//! with strictly more copies than any strictly worse one.

use super::Fitness;
use crate::candidate::Chromosome;

/// One selection round; the output multiset has exactly `p_size` members,
/// every one of them drawn from the input.
pub fn select(members: &[(Chromosome, Fitness)], p_size: usize, rank_levels: u32) -> Vec<Chromosome> {
    assert!(p_size >= 1 && !members.is_empty());

    // rank distinct chromosomes; duplicates keep their best fitness
    let mut ranked: Vec<(&Chromosome, &Fitness)> =
        members.iter().map(|(c, f)| (c, f)).collect();
    ranked.sort_by(|a, b| a.0.bits().cmp(b.0.bits()).then(a.1.cmp(b.1)));
    ranked.dedup_by(|a, b| a.0 == b.0);
    ranked.sort_by(|a, b| a.1.cmp(b.1).then_with(|| a.0.bits().cmp(b.0.bits())));

    // weights and exact quotas (largest remainder)
    let weights: Vec<u64> = (0..ranked.len())
        .map(|r| u64::from(rank_levels.saturating_sub(r as u32).max(1)))
        .collect();
    let total: u64 = weights.iter().sum();
    let mut copies: Vec<usize> = weights
        .iter()
        .map(|w| ((p_size as u64 * w) / total) as usize)
        .collect();
    let assigned: usize = copies.iter().sum();
    let mut by_remainder: Vec<usize> = (0..ranked.len()).collect();
    by_remainder.sort_by_key(|&r| (std::cmp::Reverse((p_size as u64 * weights[r]) % total), r));
    for &r in by_remainder.iter().take(p_size - assigned) {
        copies[r] += 1;
    }

    // the best chromosome must strictly dominate every strictly worse one
    loop {
        let rival = (1..ranked.len())
            .filter(|&r| ranked[r].1 > ranked[0].1)
            .map(|r| copies[r])
            .max();
        match rival {
            Some(most) if most >= copies[0] => {
                let donor = (1..ranked.len()).rev().find(|&r| copies[r] > 0).unwrap();
                copies[donor] -= 1;
                copies[0] += 1;
            }
            _ => break,
        }
    }

    let mut out = Vec::with_capacity(p_size);
    for (r, (c, _)) in ranked.iter().enumerate() {
        for _ in 0..copies[r] {
            out.push((*c).clone());
        }
    }
    debug_assert_eq!(out.len(), p_size);
    out
}
