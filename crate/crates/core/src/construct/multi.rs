//! Case 2: `Z_m` split into cycles `C_i = {i x + j y}` of the step `y`.

use serde::Serialize;

use super::{CaseTag, ReducedQuad, Subcase};
use crate::arith::{gcd_u, mod_inverse, modulo};
use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};

/// Cells `c(i, j) = (i x + j y) mod m` for `0 <= i < d`, `0 <= j < e`,
/// where `d = gcd(y, m)` and `e = m / d`.
///
/// Every translate of `{0, x, y, x + y}` is a square
/// `{c(i, j), c(i, j + 1), c(i + 1, j), c(i + 1, j + 1)}`; past the last
/// cycle the rows wrap as `c(d, j) = c(0, j + wrap)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    pub m: u64,
    pub x: u64,
    pub y: u64,
    pub d: u64,
    pub e: u64,
    pub wrap: u64,
}

impl CycleDecomposition {
    /// Requires `gcd(x, y, m) = 1`.
    pub fn new(m: u64, x: i64, y: i64) -> Self {
        let (x, y) = (modulo(x, m), modulo(y, m));
        let d = gcd_u(y, m);
        let e = m / d;
        // d x = wrap * y (mod m)  <=>  x = wrap * (y / d) (mod e)
        let beta_inv = mod_inverse((y / d) as i64, e).unwrap_or(0);
        let wrap = if e == 1 {
            0
        } else {
            ((x % e) as u128 * beta_inv as u128 % e as u128) as u64
        };
        Self { m, x, y, d, e, wrap }
    }

    pub fn cell(&self, i: u64, j: u64) -> u64 {
        let m = self.m as u128;
        ((i as u128 * self.x as u128 + j as u128 * self.y as u128) % m) as u64
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> Vec<u64> {
        (0..self.d)
            .flat_map(|i| (0..self.e).map(move |j| (i, j)))
            .map(|(i, j)| self.cell(i, j))
            .collect()
    }

    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.m as usize];
        self.cells()
            .into_iter()
            .all(|c| !std::mem::replace(&mut seen[c as usize], true))
            && self.d * self.e == self.m
    }

    /// Coloring of `Z_m` that gives cell `c(i, j)` the color `color(i, j)`.
    pub fn paint(&self, color: impl Fn(u64, u64) -> u32) -> Result<PeriodicColoring> {
        let mut word = vec![0; self.m as usize];
        for i in 0..self.d {
            for j in 0..self.e {
                word[self.cell(i, j) as usize] = color(i, j);
            }
        }
        PeriodicColoring::new(3, word)
    }
}

/// `e = u + v + w` with odd parts `u >= v >= w >= u - 2`.
pub fn odd_triple_decompose(e: u64) -> Result<(u64, u64, u64)> {
    if e.is_multiple_of(2) || e < 19 {
        return Err(Error::InvalidConfig(format!(
            "cycle length {e} must be odd and at least 19"
        )));
    }
    Ok(match e % 6 {
        3 => (e / 3, e / 3, e / 3),
        1 => {
            let u = e.div_ceil(3);
            (u, u, u - 2)
        }
        _ => {
            let u = (e + 4) / 3;
            (u, u - 2, u - 2)
        }
    })
}

/// Rotations `r_1..r_{d-1}`, each in `[u, e - u]`, whose sum `T` has
/// `(T + wrap) mod e` in `[u, e - u]`, so that the closing rotation from the
/// last cycle back to `C_0` is also in range.
pub fn rotation_schedule(d: u64, e: u64, u: u64, wrap: u64) -> Result<Vec<u64>> {
    if d < 2 || 2 * u > e {
        return Err(Error::InvalidConfig(format!(
            "no rotations for d={d} e={e} u={u}"
        )));
    }
    let in_range = |x: u64| (u..=e - u).contains(&(x % e));
    let mut r = vec![u; (d - 1) as usize];
    let mut total: u64 = r.iter().sum();
    let mut next = 0;
    while !in_range(total + wrap) {
        if next == r.len() {
            return Err(Error::ConstructionFailed {
                subcase: "2d".into(),
                detail: format!("no rotation schedule for d={d} e={e} u={u} wrap={wrap}"),
            });
        }
        r[next] += 1;
        total += 1;
        if r[next] == e - u {
            next += 1;
        }
    }
    Ok(r)
}

/// The case-2 coloring of `Z_m`, polychromatic for `{0, b - a, b, 2b - a}`.
pub fn multi_cycle_coloring(q: &ReducedQuad, tag: &CaseTag) -> Result<PeriodicColoring> {
    let axis = tag
        .axis
        .ok_or_else(|| Error::InvalidConfig("case-2 tag without axis".into()))?;
    let (step, other) = q.axis_pair(axis);
    let cycles = CycleDecomposition::new(q.m as u64, other, step);
    let (d, e, wrap) = (cycles.d, cycles.e, cycles.wrap);
    match tag.subcase {
        Subcase::S2a => {
            // Cycles alternate 0/1 and 0/2; an odd last cycle gets 1/2.
            cycles.paint(|i, j| {
                let pair: [u32; 2] = if d % 2 == 1 && i == d - 1 {
                    [1, 2]
                } else if i % 2 == 0 {
                    [0, 1]
                } else {
                    [0, 2]
                };
                pair[(j % 2) as usize]
            })
        }
        Subcase::S2b => {
            let even = |j: u64| if j == e - 1 { 1 } else { (j % 2) as u32 };
            let odd = |j: u64| if j == 0 || j % 2 == 1 { 2 } else { 0 };
            // The single-color pair {2} of the last cycle must not meet the
            // single-color pair {1} of C_0 across the wrap; rotating the last
            // cycle by one moves it off.
            let last_shift = if (wrap + 2) % e == 0 { 1 } else { 0 };
            cycles.paint(|i, j| {
                if i % 2 == 0 {
                    even(j)
                } else if i == d - 1 {
                    odd((j + last_shift) % e)
                } else {
                    odd(j)
                }
            })
        }
        Subcase::S2c => cycles.paint(|i, j| {
            let offset = if i == d - 1 { 2 } else { i % 2 };
            ((j + offset) % 3) as u32
        }),
        Subcase::S2d => {
            let (u, v, _) = match tag.uvw {
                Some(parts) => parts,
                None => odd_triple_decompose(e)?,
            };
            let base = |j: u64| -> u32 {
                if j < u {
                    (j % 2) as u32
                } else if j < u + v {
                    1 + ((j - u) % 2) as u32
                } else {
                    [2, 0][((j - u - v) % 2) as usize]
                }
            };
            let rotations = rotation_schedule(d, e, u, wrap)?;
            let mut cumulative = vec![0u64; d as usize];
            for i in 1..d as usize {
                cumulative[i] = (cumulative[i - 1] + rotations[i - 1]) % e;
            }
            cycles.paint(|i, j| base((j + e - cumulative[i as usize]) % e))
        }
        other => Err(Error::InvalidConfig(format!(
            "{other} is not a multi-cycle subcase"
        ))),
    }
}
