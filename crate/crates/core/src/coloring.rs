use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::modulo;
use crate::density::Density;
use crate::error::{Error, Result};

/// A coloring of `Z` that repeats with period `word.len()`.
///
/// The color of `n` is `word[n mod m]` with the nonnegative remainder. The
/// same value doubles as a coloring of `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicColoring {
    num_colors: u32,
    word: Vec<u32>,
}

impl PeriodicColoring {
    pub fn new(num_colors: u32, word: Vec<u32>) -> Result<Self> {
        if num_colors == 0 {
            return Err(Error::NoColors);
        }
        if word.is_empty() {
            return Err(Error::ZeroModulus);
        }
        if let Some((position, &color)) = word.iter().enumerate().find(|(_, &c)| c >= num_colors) {
            return Err(Error::ColorOutOfRange {
                position,
                color,
                num_colors,
            });
        }
        Ok(Self { num_colors, word })
    }

    /// Builds a coloring from a string of decimal digits such as `"0012"`.
    pub fn from_digits(num_colors: u32, digits: &str) -> Result<Self> {
        let word = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("not a digit: {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(num_colors, word)
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn period(&self) -> u64 {
        self.word.len() as u64
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    #[inline]
    pub fn color(&self, n: i64) -> u32 {
        self.word[modulo(n, self.period()) as usize]
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> u32 {
        let mut seen = vec![false; self.num_colors as usize];
        for &c in &self.word {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&b| b).count() as u32
    }

    /// Density of one color class.
    pub fn class_density(&self, color: u32) -> Density {
        let count = self.word.iter().filter(|&&c| c == color).count() as u64;
        Density::new(count, self.period())
    }

    /// Residues in `[0, m)` carrying `color`.
    pub fn class_residues(&self, color: u32) -> Vec<u64> {
        self.word
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(i, _)| i as u64)
            .collect()
    }

    /// `n -> self(n + t)`. Polychromatic for `S` when `self` is for `S + t`.
    pub fn shifted(&self, t: i64) -> Self {
        let m = self.period();
        let word = (0..m as i64).map(|n| self.color(n + t)).collect();
        Self {
            num_colors: self.num_colors,
            word,
        }
    }

    /// `n -> self(k n)` on `Z_m`. Polychromatic for `S` when `self` is for `k S`.
    pub fn composed_with_unit(&self, k: i64) -> Self {
        let m = self.period();
        let word = (0..m as i64)
            .map(|n| self.color(((n as i128 * k as i128).rem_euclid(m as i128)) as i64))
            .collect();
        Self {
            num_colors: self.num_colors,
            word,
        }
    }

    /// `n -> self(floor(n / k))` with period `k m`.
    ///
    /// Polychromatic for `k S` when `self` is for `S`.
    pub fn stretched(&self, k: u64) -> Self {
        assert!(k >= 1);
        let word = self
            .word
            .iter()
            .flat_map(|&c| std::iter::repeat_n(c, k as usize))
            .collect();
        Self {
            num_colors: self.num_colors,
            word,
        }
    }

    /// Renames colors through `map`, which must be a permutation of `0..k`.
    pub fn relabeled(&self, map: &[u32]) -> Self {
        Self {
            num_colors: self.num_colors,
            word: self.word.iter().map(|&c| map[c as usize]).collect(),
        }
    }

    /// Inline form used on command lines: `k=3,m=3,word=012`.
    pub fn to_inline(&self) -> String {
        format!(
            "k={},m={},word={}",
            self.num_colors,
            self.period(),
            self.word_string(':')
        )
    }

    fn word_string(&self, sep: char) -> String {
        if self.num_colors <= 10 {
            self.word
                .iter()
                .map(|&c| char::from_digit(c, 10).unwrap())
                .collect()
        } else {
            self.word
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(&sep.to_string())
        }
    }
}

/// Two-line text format: `k=<colors> m=<period>` then the word.
impl fmt::Display for PeriodicColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={} m={}", self.num_colors, self.period())?;
        f.write_str(&self.word_string(','))
    }
}

/// Accepts the two-line format or the inline `k=..,m=..,word=..` form.
impl FromStr for PeriodicColoring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (header, word) = if let Some((head, rest)) = s.split_once('\n') {
            (head.trim().to_string(), rest.trim().to_string())
        } else {
            let (head, word) = s
                .split_once("word=")
                .ok_or_else(|| Error::Parse("coloring needs a word".into()))?;
            (
                head.trim_end_matches([',', ' ']).to_string(),
                word.trim().to_string(),
            )
        };
        let mut k = None;
        let mut m = None;
        for field in header.split([',', ' ']).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
            let value: u64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("bad number in {field:?}")))?;
            match key {
                "k" => k = Some(value),
                "m" => m = Some(value),
                _ => return Err(Error::Parse(format!("unknown coloring field {key:?}"))),
            }
        }
        let k = k.ok_or_else(|| Error::Parse("missing k=".into()))? as u32;
        let m = m.ok_or_else(|| Error::Parse("missing m=".into()))? as usize;
        let word: Vec<u32> = if word.contains([',', ':']) {
            word.split([',', ':'])
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad color {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            word.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad color {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if word.len() != m {
            return Err(Error::PeriodMismatch {
                expected: m,
                got: word.len(),
            });
        }
        Self::new(k, word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_uses_nonnegative_remainder() {
        let c = PeriodicColoring::from_digits(3, "012").unwrap();
        assert_eq!(c.color(-1), 2);
        assert_eq!(c.color(-3), 0);
        assert_eq!(c.color(7), 1);
    }

    #[test]
    fn densities() {
        let c = PeriodicColoring::from_digits(3, "012").unwrap();
        assert_eq!(c.class_density(0), Density::new(1, 3));
        let c = PeriodicColoring::from_digits(3, "00122").unwrap();
        assert_eq!(c.class_density(2), Density::new(2, 5));
        let total: Density = (0..3).map(|i| c.class_density(i)).sum();
        assert_eq!(total, Density::new(1, 1));
    }

    #[test]
    fn text_formats() {
        let c = PeriodicColoring::from_digits(3, "0120").unwrap();
        assert_eq!(c.to_string(), "k=3 m=4\n0120");
        assert_eq!(c.to_string().parse::<PeriodicColoring>().unwrap(), c);
        assert_eq!("k=3,m=4,word=0120".parse::<PeriodicColoring>().unwrap(), c);

        let big = PeriodicColoring::new(12, vec![0, 11, 3]).unwrap();
        assert_eq!(big.to_string(), "k=12 m=3\n0,11,3");
        assert_eq!(big.to_string().parse::<PeriodicColoring>().unwrap(), big);
        assert_eq!(big.to_inline().parse::<PeriodicColoring>().unwrap(), big);
    }

    #[test]
    fn rejects_bad_colorings() {
        assert!(PeriodicColoring::new(0, vec![0]).is_err());
        assert!(PeriodicColoring::new(2, vec![]).is_err());
        assert!(matches!(
            PeriodicColoring::new(2, vec![0, 2]),
            Err(Error::ColorOutOfRange { position: 1, .. })
        ));
        assert!("k=3,m=4,word=012".parse::<PeriodicColoring>().is_err());
        assert!("k=3 word=012".parse::<PeriodicColoring>().is_err());
    }

    #[test]
    fn transforms() {
        let c = PeriodicColoring::from_digits(3, "012").unwrap();
        assert_eq!(c.stretched(2).word(), &[0, 0, 1, 1, 2, 2]);
        assert_eq!(c.shifted(1).word(), &[1, 2, 0]);
        assert_eq!(c.composed_with_unit(2).word(), &[0, 2, 1]);
    }
}
