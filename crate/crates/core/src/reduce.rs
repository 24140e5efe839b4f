//! Verification of polychromatic colorings and the reductions that move a
//! problem between `Z`, `Z_q` and normalized sets.

use crate::arith::{gcd_u, modulo};
use crate::coloring::PeriodicColoring;
use crate::density::Density;
use crate::error::{Error, Result};
use crate::set::IntegerSet;

/// Every translate of `set` sees all colors of `coloring`.
///
/// Checking the `m` translates `n + S`, `0 <= n < m`, is exhaustive since the
/// coloring has period `m`.
pub fn verify_polychromatic(set: &IntegerSet, coloring: &PeriodicColoring) -> bool {
    first_violation(set, coloring).is_none()
}

/// Smallest `n` in `[0, m)` whose translate `n + S` misses a color.
pub fn first_violation(set: &IntegerSet, coloring: &PeriodicColoring) -> Option<u64> {
    let m = coloring.period();
    let offsets = set.residues(m);
    let k = coloring.num_colors();
    if offsets.len() < k as usize {
        return Some(0);
    }
    let word = coloring.word();
    if k <= 64 {
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        (0..m).find(|&n| {
            let mut seen = 0u64;
            for &s in &offsets {
                let mut pos = n + s;
                if pos >= m {
                    pos -= m;
                }
                seen |= 1 << word[pos as usize];
            }
            seen != full
        })
    } else {
        let mut seen = vec![false; k as usize];
        (0..m).find(|&n| {
            seen.iter_mut().for_each(|b| *b = false);
            for &s in &offsets {
                seen[word[((n + s) % m) as usize] as usize] = true;
            }
            !seen.iter().all(|&b| b)
        })
    }
}

/// Minimum number of distinct colors over all translates of `set`.
pub fn min_colors_per_translate(set: &IntegerSet, coloring: &PeriodicColoring) -> u32 {
    let m = coloring.period();
    let mut seen = vec![false; coloring.num_colors() as usize];
    (0..m as i64)
        .map(|n| {
            seen.iter_mut().for_each(|b| *b = false);
            for s in set.iter() {
                seen[coloring.color(n + s) as usize] = true;
            }
            seen.iter().filter(|&&b| b).count() as u32
        })
        .min()
        .unwrap_or(0)
}

/// Checks a coloring of `Z_q` against every translate of `S mod q`.
///
/// The coloring is read on residues `0..q`; a period that does not divide `q`
/// is not a well-defined coloring of `Z_q` and yields `false`. A `true` result
/// lifts to an `S`-polychromatic coloring of `Z` with period `q`.
pub fn verify_polychromatic_mod(set: &IntegerSet, q: u64, coloring: &PeriodicColoring) -> bool {
    if q == 0 || !q.is_multiple_of(coloring.period()) {
        return false;
    }
    if q == coloring.period() {
        return verify_polychromatic(set, coloring);
    }
    let word = (0..q as i64).map(|n| coloring.color(n)).collect();
    let lifted = PeriodicColoring::new(coloring.num_colors(), word).expect("colors already valid");
    verify_polychromatic(set, &lifted)
}

/// `(S + t) mod m`, sorted with collisions collapsed.
pub fn translate_equivalent(set: &IntegerSet, t: i64, m: u64) -> Result<IntegerSet> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    IntegerSet::collapsing(set.iter().map(|x| modulo(x + t, m) as i64))
}

/// `(k S) mod q` for a unit `k` of `Z_q`.
///
/// A coloring `chi` that is polychromatic for the image pulls back to
/// `n -> chi(k n)` for `S` (see [`PeriodicColoring::composed_with_unit`]).
pub fn unit_multiply(set: &IntegerSet, k: i64, q: u64) -> Result<IntegerSet> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if gcd_u(k.unsigned_abs(), q) != 1 {
        return Err(Error::NotUnit { k, q });
    }
    IntegerSet::collapsing(
        set.iter()
            .map(|x| ((x as i128 * k as i128).rem_euclid(q as i128)) as i64),
    )
}

/// Block 2-coloring: blocks of length `diam(S)` alternate between colors.
///
/// Every translate contains two points exactly one block length apart, so
/// they land in adjacent blocks.
pub fn two_coloring(set: &IntegerSet) -> Result<PeriodicColoring> {
    if set.len() < 2 {
        return Err(Error::TooSmall {
            needed: 2,
            got: set.len(),
        });
    }
    let diam = set.diameter() as usize;
    let word = (0..2 * diam).map(|n| ((n / diam) % 2) as u32).collect();
    PeriodicColoring::new(2, word)
}

pub fn color_class_density(coloring: &PeriodicColoring, color: u32) -> Result<Density> {
    if color >= coloring.num_colors() {
        return Err(Error::ColorOutOfRange {
            position: 0,
            color,
            num_colors: coloring.num_colors(),
        });
    }
    Ok(coloring.class_density(color))
}
