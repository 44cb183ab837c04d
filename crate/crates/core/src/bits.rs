//! Small helpers for sets of at most 64 elements encoded as `u64` masks.

use std::cmp::Ordering;

pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// All submasks of `mask` in increasing numeric order, including 0 and `mask`.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

pub fn mask_of<I: IntoIterator<Item = usize>>(items: I) -> u64 {
    items.into_iter().fold(0, |m, i| m | (1u64 << i))
}

pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Gathers the bits of `x` selected by `mask` into the low bits.
pub fn pext(x: u64, mask: u64) -> u64 {
    let mut out = 0;
    for (k, i) in iter_bits(mask).enumerate() {
        out |= ((x >> i) & 1) << k;
    }
    out
}

/// Scatters the low bits of `x` to the positions selected by `mask`.
pub fn pdep(x: u64, mask: u64) -> u64 {
    let mut out = 0;
    for (k, i) in iter_bits(mask).enumerate() {
        out |= ((x >> k) & 1) << i;
    }
    out
}

/// Lexicographic comparison of the ascending element sequences of two sets.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    let d = a ^ b;
    if d == 0 {
        return Ordering::Equal;
    }
    let x = d.trailing_zeros();
    let above = if x == 63 { 0 } else { u64::MAX << (x + 1) };
    // The set containing x continues its sequence with x; the other one either
    // stops (and is then a proper prefix) or continues with something larger.
    let a_has = a >> x & 1 == 1;
    let other = if a_has { b } else { a };
    if a_has == (other & above != 0) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

pub fn sort_lex(v: &mut [u64]) {
    v.sort_by(|&a, &b| lex_cmp(a, b));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(m: u64) -> Vec<usize> {
        iter_bits(m).collect()
    }

    #[test]
    fn lex_matches_sequence_order() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                assert_eq!(lex_cmp(a, b), seq(a).cmp(&seq(b)), "{a:b} {b:b}");
            }
        }
    }

    #[test]
    fn submasks_enumerates_everything_once() {
        let m = 0b1011_0010u64;
        let all: Vec<u64> = submasks(m).collect();
        assert_eq!(all.len(), 16);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|&s| s & !m == 0));
    }

    #[test]
    fn pext_pdep_roundtrip() {
        let mask = 0b1101_0110u64;
        for x in 0..32u64 {
            assert_eq!(pext(pdep(x, mask), mask), x);
        }
        assert_eq!(pext(0b0100_0100, mask), 0b1010);
    }
}
