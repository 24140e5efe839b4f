//! Block templates: for each base set a block of length `r` and one of
//! length `r + 1` such that any cyclic concatenation of the two blocks is
//! polychromatic for the base set.

use crate::coloring::PeriodicColoring;
use crate::set::IntegerSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockTemplate {
    pub base: [i64; 4],
    pub r: u64,
    pub short: &'static str,
    pub long: &'static str,
}

impl BlockTemplate {
    pub fn base_set(&self) -> IntegerSet {
        IntegerSet::new(self.base.to_vec()).expect("template base sets are distinct")
    }

    /// `h` short blocks followed by `j` long ones.
    pub fn concatenate(&self, h: u64, j: u64) -> Vec<u32> {
        let digits = |s: &str| s.chars().map(|c| c.to_digit(10).unwrap()).collect::<Vec<_>>();
        let (short, long) = (digits(self.short), digits(self.long));
        let mut word = Vec::with_capacity((h * self.r + j * (self.r + 1)) as usize);
        for _ in 0..h {
            word.extend_from_slice(&short);
        }
        for _ in 0..j {
            word.extend_from_slice(&long);
        }
        word
    }

    /// Arbitrary block sequence; `true` picks the long block.
    pub fn sequence(&self, blocks: &[bool]) -> Vec<u32> {
        blocks
            .iter()
            .flat_map(|&long| {
                let s = if long { self.long } else { self.short };
                s.chars().map(|c| c.to_digit(10).unwrap())
            })
            .collect()
    }

    /// A polychromatic coloring of `Z_m` for the base set, if `m` is a
    /// nonnegative combination of `r` and `r + 1`.
    pub fn coloring(&self, m: u64) -> Option<PeriodicColoring> {
        let (h, j) = frobenius_decompose(m, self.r)?;
        PeriodicColoring::new(3, self.concatenate(h, j)).ok()
    }
}

/// The six templates; the long block repeats the initial 0 of the short one.
pub const TEMPLATES: [BlockTemplate; 6] = [
    BlockTemplate {
        base: [0, 2, 3, 5],
        r: 6,
        short: "001122",
        long: "0001122",
    },
    BlockTemplate {
        base: [0, 1, 3, 4],
        r: 6,
        short: "001212",
        long: "0001212",
    },
    BlockTemplate {
        base: [0, 1, 2, 3],
        r: 3,
        short: "012",
        long: "0012",
    },
    BlockTemplate {
        base: [0, 3, 4, 7],
        r: 9,
        short: "000111222",
        long: "0000111222",
    },
    BlockTemplate {
        base: [0, 3, 5, 8],
        r: 9,
        short: "000111222",
        long: "0000111222",
    },
    BlockTemplate {
        base: [0, 1, 4, 5],
        r: 7,
        short: "0001212",
        long: "00001212",
    },
];

pub fn template_for(base: &[i64]) -> Option<&'static BlockTemplate> {
    TEMPLATES.iter().find(|t| t.base == base)
}

/// `m = h r + j (r + 1)` with `h, j >= 0`, choosing the smallest `j`.
///
/// Every `m > r^2 - r - 1` is representable; `r^2 - r - 1` itself is not.
pub fn frobenius_decompose(m: u64, r: u64) -> Option<(u64, u64)> {
    assert!(r >= 1);
    (0..r).find_map(|j| {
        let used = j * (r + 1);
        (used <= m && (m - used).is_multiple_of(r)).then(|| ((m - used) / r, j))
    })
}
