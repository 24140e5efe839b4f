//! Case 1: a unit step turns the working set into `T = {0, 1, g, g + 1}`.

use super::table::{template_for, BlockTemplate};
use super::{Axis, ReducedQuad};
use crate::arith::{mod_inverse, modulo};
use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};
use crate::reduce::verify_polychromatic;
use crate::set::IntegerSet;

/// `g = step^-1 * other mod m` for the axis, reflected to `m - g` when
/// `g > m / 2`. The flag reports the reflection.
///
/// `T` and its reflection are translates of each other mod `m`, so a
/// coloring for one serves the other.
pub fn single_cycle_g(q: &ReducedQuad, axis: Axis) -> Result<(u64, bool)> {
    let m = q.m as u64;
    let (step, other) = q.axis_pair(axis);
    let inverse = mod_inverse(step, m).ok_or(Error::NotUnit { k: step, q: m })?;
    let g = ((inverse as u128 * modulo(other, m) as u128) % m as u128) as u64;
    debug_assert!((2..=m - 2).contains(&g));
    if 2 * g > m {
        Ok((m - g, true))
    } else {
        Ok((g, false))
    }
}

/// Smallest multiple of 3 with `g > ceil(m / s)`.
pub fn s_parameter(g: u64, m: u64) -> u64 {
    let mut s = 3;
    while g <= m.div_ceil(s) {
        s += 3;
    }
    s
}

fn target(g: u64) -> IntegerSet {
    let g = g as i64;
    IntegerSet::new(vec![0, 1, g, g + 1]).expect("g >= 2")
}

fn checked(subcase: &str, g: u64, coloring: PeriodicColoring) -> Result<PeriodicColoring> {
    if verify_polychromatic(&target(g), &coloring) {
        Ok(coloring)
    } else {
        Err(Error::ConstructionFailed {
            subcase: subcase.into(),
            detail: format!("pattern for g={g} m={} misses a color", coloring.period()),
        })
    }
}

fn template_coloring(template: &BlockTemplate, m: u64, subcase: &str) -> Result<PeriodicColoring> {
    template.coloring(m).ok_or_else(|| Error::ConstructionFailed {
        subcase: subcase.into(),
        detail: format!(
            "{m} is not a sum of blocks of length {} and {}",
            template.r,
            template.r + 1
        ),
    })
}

/// `g in {2, 3, 4}`: `T` is itself a template base.
pub fn subcase_1a_coloring(g: u64, m: u64) -> Result<PeriodicColoring> {
    let base = target(g);
    let template = template_for(base.elements()).ok_or_else(|| Error::ConstructionFailed {
        subcase: "1a".into(),
        detail: format!("no template for g={g}"),
    })?;
    checked("1a", g, template_coloring(template, m, "1a")?)
}

/// `s` near-equal intervals, longer ones first; interval `i` alternates the
/// pair `(0,1)`, `(1,2)` or `(2,0)` according to `i mod 3`.
pub fn subcase_1b_coloring(g: u64, m: u64, s: u64) -> Result<PeriodicColoring> {
    const PAIRS: [[u32; 2]; 3] = [[0, 1], [1, 2], [2, 0]];
    let (short, long_count) = (m / s, m % s);
    let mut word = Vec::with_capacity(m as usize);
    for i in 0..s {
        let len = short + u64::from(i < long_count);
        let pair = PAIRS[(i % 3) as usize];
        word.extend((0..len).map(|j| pair[(j % 2) as usize]));
    }
    checked("1b", g, PeriodicColoring::new(3, word)?)
}

/// `m = 3g + delta` with `delta` in `{-2, -1, 1, 2, 4, 5}`: multiplying by
/// 3 sends `T` to a translate of a template base.
pub fn subcase_1c_coloring(g: u64, m: u64) -> Result<PeriodicColoring> {
    let tripled: Vec<u64> = [0, 3, 3 * g, 3 * g + 3].iter().map(|x| x % m).collect();
    let template = tripled
        .iter()
        .find_map(|&anchor| {
            let mut base: Vec<i64> = tripled.iter().map(|&x| ((x + m - anchor) % m) as i64).collect();
            base.sort_unstable();
            template_for(&base)
        })
        .ok_or_else(|| Error::ConstructionFailed {
            subcase: "1c".into(),
            detail: format!("3T is not a template translate for g={g} m={m}"),
        })?;
    let phi = template_coloring(template, m, "1c")?;
    checked("1c", g, phi.composed_with_unit(3))
}

/// `m = 3g` or `m = 3g + 3`.
pub fn subcase_1d_coloring(g: u64, m: u64) -> Result<PeriodicColoring> {
    let word: Vec<u32> = if !g.is_multiple_of(3) {
        (0..m).map(|n| (n % 3) as u32).collect()
    } else {
        // Interval offsets: 0,1,2 for m = 3g and 0,2,1 for m = 3g + 3.
        let (len, offsets) = if m == 3 * g {
            (g, [0, 1, 2])
        } else {
            (g + 1, [0, 2, 1])
        };
        if 3 * len != m {
            return Err(Error::ConstructionFailed {
                subcase: "1d".into(),
                detail: format!("m={m} is neither 3g nor 3g+3 for g={g}"),
            });
        }
        (0..m)
            .map(|n| ((n % len + offsets[(n / len) as usize]) % 3) as u32)
            .collect()
    };
    checked("1d", g, PeriodicColoring::new(3, word)?)
}
