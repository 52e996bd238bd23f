//! Per-input sensitivity, block sensitivity and minimum witness size, with
//! their worst-case maxima and exact expectations under a product measure.
//!
//! Block sensitivity is a maximum set packing and witness size a minimum
//! hitting set over the family of minimal sensitive blocks: a set `W` is a
//! witness for `f` at `x` exactly when it meets every sensitive block
//! (if `W` misses a block `B`, then `x^B` agrees with `x` on `W` and
//! disagrees on `f`; conversely a disagreeing point inside the fixed
//! subcube yields a sensitive block disjoint from `W`). Minimal blocks
//! suffice on both sides: every sensitive block contains a minimal one,
//! and shrinking the members of a disjoint family keeps it disjoint.
//! Both searches are exact branch-and-bound; they are NP-hard in general,
//! hence practical only at small arity (the suites stay at n <= 13).

use crate::bf::BooleanFunction;
use crate::measure::ProductMeasure;
use crate::scalar::Scalar;

/// The complete family of minimal sensitive blocks of `f` at one input.
#[derive(Clone, Debug)]
pub struct SensitiveBlockFamily {
    pub input: u32,
    pub value: bool,
    /// Minimal blocks as bit masks, listed by increasing size.
    pub blocks: Vec<u32>,
}

/// Number of pivotal bits at `x`.
pub fn sensitivity_at(f: &BooleanFunction, x: u32) -> usize {
    let v = f.eval_index(x);
    (0..f.arity())
        .filter(|&i| f.eval_index(x ^ (1 << i)) != v)
        .count()
}

/// All subset masks of `n` bits in increasing-size order.
fn masks_by_size(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

/// Enumerates the minimal sensitive blocks at `x`: scanning subsets by
/// increasing size keeps exactly the flips that change `f` and are not
/// supersets of an already-kept block.
pub fn minimal_sensitive_blocks(f: &BooleanFunction, x: u32) -> SensitiveBlockFamily {
    minimal_blocks_with(&masks_by_size(f.arity()), f, x)
}

fn minimal_blocks_with(masks: &[u32], f: &BooleanFunction, x: u32) -> SensitiveBlockFamily {
    let value = f.eval_index(x);
    let mut blocks: Vec<u32> = Vec::new();
    for &m in masks {
        if f.eval_index(x ^ m) != value && !blocks.iter().any(|&b| b & m == b) {
            blocks.push(m);
        }
    }
    SensitiveBlockFamily {
        input: x,
        value,
        blocks,
    }
}

/// Maximum number of pairwise disjoint minimal sensitive blocks.
pub fn block_sensitivity_at(f: &BooleanFunction, x: u32) -> usize {
    max_packing(&minimal_sensitive_blocks(f, x).blocks)
}

/// Minimum witness size at `x`: a minimum hitting set of the minimal
/// sensitive blocks.
pub fn witness_size_at(f: &BooleanFunction, x: u32) -> usize {
    min_hitting_set(&minimal_sensitive_blocks(f, x).blocks, f.arity())
}

/// Independent route to the witness size: direct scan over fixing sets by
/// increasing size. Exponentially slower; kept as a cross-check oracle.
pub fn witness_size_at_direct(f: &BooleanFunction, x: u32) -> usize {
    let n = f.arity();
    if f.restricted_constant(crate::bf::Restriction::EMPTY).is_some() {
        return 0;
    }
    for m in masks_by_size(n) {
        let r = crate::bf::Restriction {
            assigned: m,
            values: x & m,
        };
        if f.restricted_constant(r).is_some() {
            return m.count_ones() as usize;
        }
    }
    n
}

/// Exact maximum set packing by branch and bound. Branches on the lowest
/// ground element covered by any remaining block.
pub fn max_packing(blocks: &[u32]) -> usize {
    // invariant: `avail` blocks are pairwise compatible with every block
    // already packed
    fn rec(avail: &[u32], count: usize, best: &mut usize) {
        if count > *best {
            *best = count;
        }
        if avail.is_empty() || count + avail.len() <= *best {
            return;
        }
        let union = avail.iter().fold(0u32, |a, b| a | b);
        let elem = union & union.wrapping_neg();
        // branch on the lowest live element: either some block through it
        // is packed, or the element goes unused
        for (i, &b) in avail.iter().enumerate() {
            if b & elem != 0 {
                let rest: Vec<u32> = avail
                    .iter()
                    .enumerate()
                    .filter(|&(j, o)| j != i && o & b == 0)
                    .map(|(_, &o)| o)
                    .collect();
                rec(&rest, count + 1, best);
            }
        }
        let without: Vec<u32> = avail.iter().copied().filter(|b| b & elem == 0).collect();
        rec(&without, count, best);
    }
    let mut best = 0;
    rec(blocks, 0, &mut best);
    best
}

/// Exact minimum hitting set by branch and bound; the disjoint-packing
/// count of the still-unhit blocks is the lower bound.
pub fn min_hitting_set(blocks: &[u32], n: usize) -> usize {
    if blocks.is_empty() {
        return 0;
    }
    fn greedy_packing(blocks: &[u32]) -> usize {
        let mut used = 0u32;
        let mut count = 0;
        for &b in blocks {
            if b & used == 0 {
                used |= b;
                count += 1;
            }
        }
        count
    }
    fn rec(blocks: &[u32], chosen: usize, best: &mut usize) {
        if blocks.is_empty() {
            *best = (*best).min(chosen);
            return;
        }
        if chosen + greedy_packing(blocks) >= *best {
            return;
        }
        let target = *blocks.iter().min_by_key(|b| b.count_ones()).unwrap();
        let mut bit = target;
        while bit != 0 {
            let elem = bit & bit.wrapping_neg();
            let rest: Vec<u32> = blocks.iter().copied().filter(|b| b & elem == 0).collect();
            rec(&rest, chosen + 1, best);
            bit ^= elem;
        }
    }
    let mut best = n;
    rec(blocks, 0, &mut best);
    debug_assert!(best >= max_packing(blocks));
    best
}

/// Worst-case (maximum over inputs) sensitivity, block sensitivity and
/// witness size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetPointwise {
    pub sensitivity: usize,
    pub block_sensitivity: usize,
    pub witness: usize,
}

pub fn deterministic_measures(f: &BooleanFunction) -> DetPointwise {
    let masks = masks_by_size(f.arity());
    let mut out = DetPointwise {
        sensitivity: 0,
        block_sensitivity: 0,
        witness: 0,
    };
    for x in 0..f.table_len() as u32 {
        let fam = minimal_blocks_with(&masks, f, x);
        out.sensitivity = out.sensitivity.max(sensitivity_at(f, x));
        out.block_sensitivity = out.block_sensitivity.max(max_packing(&fam.blocks));
        out.witness = out.witness.max(min_hitting_set(&fam.blocks, f.arity()));
    }
    out
}

/// Exact expectations of the pointwise quantities under `pi_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistPointwise<S: Scalar> {
    pub sensitivity: S,
    pub block_sensitivity: S,
    pub witness: S,
}

pub fn distributional_measures<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
) -> DistPointwise<S> {
    let masks = masks_by_size(f.arity());
    let weights = m.weights(f.arity());
    let mut s = S::zero();
    let mut b = S::zero();
    let mut w = S::zero();
    for x in 0..f.table_len() as u32 {
        let pr = &weights[x as usize];
        if pr.is_zero() {
            continue;
        }
        let fam = minimal_blocks_with(&masks, f, x);
        let sv = S::from_usize(sensitivity_at(f, x)).expect("small count");
        let bv = S::from_usize(max_packing(&fam.blocks)).expect("small count");
        let wv = S::from_usize(min_hitting_set(&fam.blocks, f.arity())).expect("small count");
        s = s + pr.clone() * sv;
        b = b + pr.clone() * bv;
        w = w + pr.clone() * wv;
    }
    DistPointwise {
        sensitivity: s,
        block_sensitivity: b,
        witness: w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::ProductMeasure;
    use crate::scalar::{exact, Exact};
    use crate::zoo;

    #[test]
    fn sensitivity_examples() {
        let maj3 = zoo::maj(3).unwrap();
        assert_eq!(sensitivity_at(&maj3, 0b011), 2);
        for n in 1..=4 {
            let par = zoo::parity(n).unwrap();
            for x in 0..1u32 << n {
                assert_eq!(sensitivity_at(&par, x), n);
            }
        }
        assert_eq!(sensitivity_at(&BooleanFunction::constant(3, true), 0), 0);
    }

    use crate::bf::BooleanFunction;

    #[test]
    fn minimal_blocks_examples() {
        let and2 = zoo::and(2).unwrap();
        assert_eq!(minimal_sensitive_blocks(&and2, 0b11).blocks, vec![0b01, 0b10]);
        assert_eq!(minimal_sensitive_blocks(&and2, 0b00).blocks, vec![0b11]);
        let maj3 = zoo::maj(3).unwrap();
        assert_eq!(
            minimal_sensitive_blocks(&maj3, 0b111).blocks,
            vec![0b011, 0b101, 0b110]
        );
    }

    #[test]
    fn block_sensitivity_examples() {
        assert_eq!(block_sensitivity_at(&zoo::and(2).unwrap(), 0b11), 2);
        assert_eq!(block_sensitivity_at(&zoo::maj(3).unwrap(), 0b111), 1);
        // weight-4 input of the 8-bit two-level-weight function
        let g = zoo::nisan(8).unwrap();
        assert_eq!(block_sensitivity_at(&g, 0b00001111), 6);
    }

    #[test]
    fn witness_examples() {
        let g = zoo::nisan(8).unwrap();
        assert_eq!(witness_size_at(&g, 0b00001111), 7);
        assert_eq!(witness_size_at(&zoo::maj(3).unwrap(), 0b011), 2);
        assert_eq!(witness_size_at(&BooleanFunction::constant(4, false), 3), 0);
    }

    #[test]
    fn witness_matches_direct_search() {
        for f in [
            zoo::g4(),
            zoo::h4(),
            zoo::maj4(),
            zoo::all_equal3(),
            zoo::tribes(2, 2).unwrap(),
        ] {
            for x in 0..f.table_len() as u32 {
                assert_eq!(
                    witness_size_at(&f, x),
                    witness_size_at_direct(&f, x),
                    "{f:?} at {x}"
                );
            }
        }
    }

    #[test]
    fn deterministic_examples() {
        let g = zoo::nisan(8).unwrap();
        let d = deterministic_measures(&g);
        assert_eq!((d.sensitivity, d.block_sensitivity, d.witness), (6, 6, 7));

        let d = deterministic_measures(&zoo::maj4());
        assert_eq!((d.sensitivity, d.block_sensitivity, d.witness), (3, 3, 3));

        let d = deterministic_measures(&zoo::tribes(2, 2).unwrap());
        assert_eq!((d.sensitivity, d.block_sensitivity, d.witness), (2, 2, 2));
    }

    #[test]
    fn distributional_examples() {
        let half = ProductMeasure::half();
        let d = distributional_measures::<Exact>(&zoo::maj(3).unwrap(), &half);
        assert_eq!(d.sensitivity, exact(3, 2));
        assert_eq!(d.block_sensitivity, exact(7, 4));
        assert_eq!(d.witness, exact(2, 1));

        let d = distributional_measures::<Exact>(&zoo::and(3).unwrap(), &half);
        assert_eq!(d.sensitivity, exact(3, 4));
        assert_eq!(d.block_sensitivity, exact(5, 4));
        assert_eq!(d.witness, exact(5, 4));
    }

    /// Exhaustive enumeration puts the expected block sensitivity of the
    /// four-point 4-bit function at 37/16, not the 9/4 sometimes quoted:
    /// at x = (0,0,0,1) the blocks {3}, {4}, {1,2} are pairwise disjoint
    /// and all flip the value, so b(x) = 3 there, and the per-input values
    /// (matching w pointwise) sum to 37 over the 16 inputs.
    #[test]
    fn g4_distributional_values() {
        let half = ProductMeasure::half();
        let g = zoo::g4();
        assert_eq!(block_sensitivity_at(&g, 0b1000), 3);
        let d = distributional_measures::<Exact>(&g, &half);
        assert_eq!(d.sensitivity, exact(3, 2));
        assert_eq!(d.block_sensitivity, exact(37, 16));
        assert_eq!(d.witness, exact(37, 16));
    }
}
