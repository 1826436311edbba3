//! Crossover and mutation. Both draw from the caller's RNG in a fixed order
//! so a whole run replays bit-identically from its seed.

use crate::candidate::Chromosome;
use rand::Rng;

/// Single-point tail-swap crossover, applied with probability `p_c`.
///
/// By default the cut lands on a gene boundary (an even bit index) so a
/// default's bit pair never splits; `any_position` restores cuts at every
/// position in `1..len`. Forced bits are re-pinned on the offspring.
pub fn crossover<R: Rng>(
    a: &Chromosome,
    b: &Chromosome,
    p_c: f64,
    any_position: bool,
    forced: &[bool],
    rng: &mut R,
) -> (Chromosome, Chromosome) {
    assert_eq!(a.len(), b.len(), "crossover requires equal lengths");
    let len = a.len();
    // draw the decision before anything else to keep the stream stable
    let cross = rng.gen::<f64>() < p_c;
    if !cross || len < 2 {
        return (a.clone(), b.clone());
    }
    let cut = if any_position {
        rng.gen_range(1..len)
    } else {
        let boundaries = (len - 1) / 2; // even indices 2, 4, ..., below len
        if boundaries == 0 {
            return (a.clone(), b.clone());
        }
        2 * rng.gen_range(1..=boundaries)
    };
    let mut c1: Vec<bool> = a.bits()[..cut].to_vec();
    c1.extend_from_slice(&b.bits()[cut..]);
    let mut c2: Vec<bool> = b.bits()[..cut].to_vec();
    c2.extend_from_slice(&a.bits()[cut..]);
    let (mut c1, mut c2) = (Chromosome::new(c1), Chromosome::new(c2));
    c1.apply_forced(forced);
    c2.apply_forced(forced);
    (c1, c2)
}

/// Flips each bit independently with probability `p_m`; forced bits never
/// flip. One random number is drawn per position regardless of the mask.
pub fn mutate<R: Rng>(g: &mut Chromosome, p_m: f64, forced: &[bool], rng: &mut R) {
    for (i, &pinned) in forced.iter().enumerate() {
        let flip = rng.gen::<f64>() < p_m;
        if flip && !pinned {
            g.flip(i);
        }
    }
}
