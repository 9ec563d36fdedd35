//! Ryser's formula for the permanent of a square 0/1 matrix.

/// Permanent of a square 0/1 matrix given as row bitmasks over `n` columns.
///
/// Walks the column subsets in Gray-code order so each step updates the row
/// sums by one column. `n <= 16`.
pub fn permanent_01(rows: &[u16]) -> u64 {
    let n = rows.len();
    assert!(n <= 16);
    if n == 0 {
        return 1;
    }
    let mut sums = vec![0i64; n];
    let mut total: i128 = 0;
    let mut subset: u32 = 0;
    for k in 1u32..(1u32 << n) {
        let col = k.trailing_zeros() as usize;
        subset ^= 1 << col;
        let added = subset >> col & 1 == 1;
        for (s, row) in sums.iter_mut().zip(rows) {
            if row >> col & 1 == 1 {
                *s += if added { 1 } else { -1 };
            }
        }
        let product: i128 = sums.iter().map(|&s| s as i128).product();
        if product != 0 {
            // sign (-1)^{n - |S|}
            if (n as u32 - subset.count_ones()) % 2 == 0 {
                total += product;
            } else {
                total -= product;
            }
        }
    }
    debug_assert!(total >= 0);
    total as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn brute(rows: &[u16]) -> u64 {
        let n = rows.len();
        (0..n)
            .permutations(n)
            .filter(|p| p.iter().enumerate().all(|(i, &j)| rows[i] >> j & 1 == 1))
            .count() as u64
    }

    #[test]
    fn small_cases() {
        assert_eq!(permanent_01(&[]), 1);
        assert_eq!(permanent_01(&[1]), 1);
        assert_eq!(permanent_01(&[0]), 0);
        // all-ones n x n has permanent n!
        assert_eq!(permanent_01(&[0b111; 3]), 6);
        assert_eq!(permanent_01(&[0xFFF; 12]), 479_001_600);
        // identity
        assert_eq!(permanent_01(&[0b001, 0b010, 0b100]), 1);
    }

    #[test]
    fn matches_brute_force_on_all_3x3() {
        for bits in 0u32..(1 << 9) {
            let rows: Vec<u16> = (0..3).map(|r| ((bits >> (3 * r)) & 0b111) as u16).collect();
            assert_eq!(permanent_01(&rows), brute(&rows), "{rows:?}");
        }
    }

    #[test]
    fn matches_brute_force_on_banded_5x5() {
        for width in 0..5u16 {
            let rows: Vec<u16> = (0..5)
                .map(|r: u16| {
                    let lo = r.saturating_sub(width);
                    let hi = (r + width).min(4);
                    (lo..=hi).fold(0u16, |m, c| m | 1 << c)
                })
                .collect();
            assert_eq!(permanent_01(&rows), brute(&rows));
        }
    }
}
