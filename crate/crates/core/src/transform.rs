//! In-place transforms over the bitmask lattice: subset zeta / Möbius sums
//! and the Walsh–Hadamard transform.
//!
//! All three share the same access pattern: for every bit level `h`, combine
//! each amplitude pair `(data[i], data[i + h])`. The per-level passes commute,
//! so low levels are processed inside cache-sized blocks before the remaining
//! high levels stream the full array; the arithmetic per element is identical
//! to the naive level order.

/// Pairs per block processed while resident in cache (2^13 elements).
const BLOCK_BITS: usize = 13;

/// Apply `op` to every (low, high) pair at every bit level of a
/// power-of-two-length slice. `op(lo, hi)` returns the replacement pair.
pub fn apply_pairwise_levels<E, F>(data: &mut [E], op: F)
where
    E: Copy,
    F: Fn(E, E) -> (E, E),
{
    let len = data.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let n = len.trailing_zeros() as usize;

    let block_levels = n.min(BLOCK_BITS);
    for block in data.chunks_exact_mut(1 << block_levels) {
        for level in 0..block_levels {
            pass(block, 1 << level, &op);
        }
    }
    for level in block_levels..n {
        pass(data, 1 << level, &op);
    }
}

#[inline]
fn pass<E, F>(data: &mut [E], h: usize, op: &F)
where
    E: Copy,
    F: Fn(E, E) -> (E, E),
{
    for block in data.chunks_exact_mut(2 * h) {
        let (lo, hi) = block.split_at_mut(h);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = op(*a, *b);
            *a = x;
            *b = y;
        }
    }
}

/// Subset zeta transform: `out[z] = sum over j subset of z of data[j]`.
pub fn subset_zeta_in_place<E>(data: &mut [E])
where
    E: Copy + std::ops::Add<Output = E>,
{
    apply_pairwise_levels(data, |a, b| (a, b + a));
}

/// Subset Möbius transform, the inverse of [`subset_zeta_in_place`]:
/// recovers `c` with `data[z] = sum over j subset of z of c[j]`.
pub fn subset_moebius_in_place<E>(data: &mut [E])
where
    E: Copy + std::ops::Sub<Output = E>,
{
    apply_pairwise_levels(data, |a, b| (a, b - a));
}

/// Unnormalized Walsh–Hadamard transform; applying it twice multiplies the
/// input by `2^n`.
pub fn walsh_hadamard_in_place<E>(data: &mut [E])
where
    E: Copy + std::ops::Add<Output = E> + std::ops::Sub<Output = E>,
{
    apply_pairwise_levels(data, |a, b| (a + b, a - b));
}
