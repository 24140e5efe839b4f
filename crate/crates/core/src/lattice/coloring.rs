//! Colorings of `Z^d` that factor through a linear functional.

use serde::Serialize;

use super::{LatticeSet, ProjectionVector};
use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// `color(v) = base(sum_i functional_i v_i)` for a periodic coloring `base`
/// of `Z`. The affine-mod colorings `(sum_i l_i v_i) mod M` are the case
/// `base = 0, 1, ..., M - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeColoring {
    functional: Vec<i64>,
    base: PeriodicColoring,
}

impl LatticeColoring {
    pub fn new(functional: Vec<i64>, base: PeriodicColoring) -> Result<Self> {
        if functional.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        Ok(Self { functional, base })
    }

    /// `(sum_i coeffs_i v_i) mod modulus` with `modulus` colors.
    pub fn affine(coeffs: Vec<i64>, modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Self::new(coeffs, PeriodicColoring::new(modulus, (0..modulus).collect())?)
    }

    pub fn dim(&self) -> usize {
        self.functional.len()
    }

    pub fn functional(&self) -> &[i64] {
        &self.functional
    }

    pub fn base(&self) -> &PeriodicColoring {
        &self.base
    }

    pub fn num_colors(&self) -> u32 {
        self.base.num_colors()
    }

    /// Period in every coordinate direction.
    pub fn period(&self) -> u64 {
        self.base.period()
    }

    pub fn color(&self, v: &[i64]) -> u32 {
        let x: i128 = self
            .functional
            .iter()
            .zip(v)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        let m = self.base.period() as i128;
        self.base.color(x.rem_euclid(m) as i64)
    }

    /// `v -> self(f_w(v))` on `Z^{d+1}`.
    pub fn lifted_through(&self, w: &ProjectionVector) -> Result<Self> {
        if w.dim() != self.dim() + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim() + 1,
                got: w.dim(),
            });
        }
        let head = &w.as_slice()[..self.dim()];
        let mut functional = self.functional.clone();
        functional.push(-self.functional.iter().zip(head).map(|(a, b)| a * b).sum::<i64>());
        Self::new(functional, self.base.clone())
    }

    /// Minimum number of colors over the translates `n + S`, taken over the
    /// base points `n` of one period box `[0, P)^d`, which covers all
    /// translates.
    pub fn min_colors_per_translate(&self, set: &LatticeSet, exec: Execution) -> u32 {
        let d = self.dim();
        assert_eq!(set.dim(), d, "set and coloring dimensions differ");
        let p = self.period();
        let count = p.checked_pow(d as u32).expect("window size fits u64");
        let point = |index: u64| -> Vec<i64> {
            let mut n = Vec::with_capacity(d);
            let mut rest = index;
            for _ in 0..d {
                n.push((rest % p) as i64);
                rest /= p;
            }
            n
        };
        let colors_at = |index: u64| -> u32 {
            let n = point(index);
            let mut seen = 0u128;
            for s in set.points() {
                let v: Vec<i64> = n.iter().zip(s).map(|(a, b)| a + b).collect();
                seen |= 1u128 << (self.color(&v) % 128);
            }
            seen.count_ones()
        };
        let counts = par::map(exec, &(0..count).collect::<Vec<_>>(), |&i| colors_at(i));
        counts.into_iter().min().unwrap_or(0)
    }

    /// Every translate receives every color.
    pub fn verify(&self, set: &LatticeSet, exec: Execution) -> bool {
        self.num_colors() <= 128 && self.min_colors_per_translate(set, exec) == self.num_colors()
    }
}

fn unit(d: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = sign;
    v
}

/// `{0, e_1, ..., e_d}`.
pub fn semicross_set(d: usize) -> LatticeSet {
    let mut points = vec![vec![0; d]];
    points.extend((0..d).map(|i| unit(d, i, 1)));
    LatticeSet::new(points).expect("distinct")
}

/// `{0, +-e_1, ..., +-e_d}`.
pub fn cross_set(d: usize) -> LatticeSet {
    let mut points = vec![vec![0; d]];
    for i in 0..d {
        points.push(unit(d, i, 1));
        points.push(unit(d, i, -1));
    }
    LatticeSet::new(points).expect("distinct")
}

/// `v_1 + 2 v_2 + ... + d v_d mod (d + 1)`.
pub fn semicross_coloring(d: usize) -> Result<LatticeColoring> {
    LatticeColoring::affine((1..=d as i64).collect(), d as u32 + 1)
}

/// `v_1 + 2 v_2 + ... + d v_d mod (2d + 1)`.
pub fn cross_coloring(d: usize) -> Result<LatticeColoring> {
    LatticeColoring::affine((1..=d as i64).collect(), 2 * d as u32 + 1)
}

/// The 4-coloring `2 X(n) + Y(n)` of `Z` for `{0, a, b}`, `a` even and `b`
/// odd: writing `n = 2a q + r` with `-a <= r < a`, `X(n) = [r < 0]` and
/// `Y(n) = n mod 2`. Every translate of `{0, a, b}` gets at least 3 colors.
pub fn alternating_block_coloring(a: i64, b: i64) -> Result<PeriodicColoring> {
    if a <= 0 || b <= 0 {
        return Err(Error::Parity(format!("a={a} and b={b} must be positive")));
    }
    if a % 2 != 0 {
        return Err(Error::Parity(format!("a={a} must be even")));
    }
    if b % 2 == 0 {
        return Err(Error::Parity(format!("b={b} must be odd")));
    }
    let period = 2 * a;
    let word = (0..period)
        .map(|n| {
            let r = (n + a).rem_euclid(period) - a;
            2 * u32::from(r < 0) + (n % 2) as u32
        })
        .collect();
    PeriodicColoring::new(4, word)
}
